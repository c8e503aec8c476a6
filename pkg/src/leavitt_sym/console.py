import sys

_quiet = False


def set_quiet(quiet: bool) -> None:
    global _quiet
    _quiet = quiet


def info(message: str) -> None:
    if not _quiet:
        print(f"[*] {message}", file=sys.stderr)


def success(message: str) -> None:
    if not _quiet:
        print(f"[✓] {message}", file=sys.stderr)


def failure(message: str) -> None:
    print(f"[✗] {message}", file=sys.stderr)


def warn(message: str) -> None:
    print(f"[!] {message}", file=sys.stderr)
