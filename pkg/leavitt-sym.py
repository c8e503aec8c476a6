#!/usr/bin/env python3
import sys
import os

# Add src to sys.path to allow imports from leavitt_sym package without installation
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), 'src')))

try:
    from leavitt_sym.cli import main
except ImportError as e:
    print(f"Error: Could not import leavitt_sym package: {e}")
    sys.exit(1)

if __name__ == "__main__":
    main()
