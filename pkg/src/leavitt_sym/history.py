import json
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import console
from .constants import LOG_FILE


def log_run(
    command: str,
    arguments: List[str],
    exit_code: int,
    duration: float,
    summary: str = "",
    budget_report: Optional[Dict[str, Any]] = None,
) -> None:
    """Append one run record to the JSONL log in the working directory."""
    log_entry: Dict[str, Any] = {
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "command": command,
        "arguments": arguments,
        "exit_code": exit_code,
        "duration_seconds": round(duration, 2),
        "summary": summary,
    }
    if budget_report:
        log_entry["budget"] = budget_report

    try:
        with open(Path(LOG_FILE), "a") as f:
            f.write(json.dumps(log_entry) + "\n")
    except Exception as e:
        console.warn(f"Warning: Could not write to log file: {e}")


def show_history() -> None:
    """Print the run history recorded in .leavittsym_logs.jsonl."""
    log_file = Path(LOG_FILE)
    if not log_file.exists():
        print("No history found.")
        return

    print(f"{'Timestamp':<20} | {'Command':<10} | {'Exit':<4} | {'Seconds':<8} | {'Summary'}")
    print("-" * 80)

    try:
        with open(log_file, "r") as f:
            for line in f:
                try:
                    entry = json.loads(line)
                    timestamp = entry.get("timestamp", "N/A")
                    command = entry.get("command", "N/A")
                    exit_code = entry.get("exit_code", "N/A")
                    seconds = entry.get("duration_seconds", 0)
                    summary = entry.get("summary", "")
                    print(f"{timestamp:<20} | {command:<10} | {exit_code!s:<4} | {seconds!s:<8} | {summary}")
                except json.JSONDecodeError:
                    continue
    except Exception as e:
        print(f"Error reading history: {e}")
