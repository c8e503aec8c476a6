# MIT License
#
# Copyright (c) 2026 The leavitt-sym authors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

DEFAULT_CONFIG = {
    "factorial_budget": 6,   # max |E| for brute-force permutation checks
    "enumeration_guard": 5,  # max v_max / e_max for labeled graph enumeration
    "prop31_guard": 5,       # max n for simple digraph enumeration
    "automorphism_guard": 8,
    "dedup": True,
    "workers": 1,
    "quiet": False,
    "log_runs": False,
}

CONFIG_BASENAME = ".leavittsym"
GLOBAL_CONFIG_DIR = ".leavittsym"
LOG_FILE = ".leavittsym_logs.jsonl"

EXIT_OK = 0
EXIT_DISCREPANCY = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3
