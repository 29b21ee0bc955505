# Copyright (c) 2026 The discoloc contributors.
# All rights reserved.
#
# This file is part of discoloc
# (discrepancy localization for large numerical model codes).
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# For any clarifications or special considerations,
# please open an issue on the project tracker.

"""
    Every Python file outside ``__init__.py`` must start with the project
    copyright header.
"""

from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
SCAN_DIRS = ["discoloc", "tests"]


def _python_files():
    files = []
    for dir_name in SCAN_DIRS:
        dir_path = ROOT / dir_name
        if dir_path.exists():
            files.extend(dir_path.rglob("*.py"))
    return sorted(path for path in files if path.name != "__init__.py")


def test_copyright():
    """Test if all Python files have the required copyright header."""
    try:
        copyright_header = (ROOT / "CopyrightHeader.txt").read_text().strip()
    except FileNotFoundError:
        pytest.fail("Copyright header template file not found")

    files_missing_header = [
        str(path) for path in _python_files() if not path.read_text().startswith(copyright_header)
    ]
    if files_missing_header:
        files_list = "\n".join(files_missing_header)
        pytest.fail(f"The following files are missing the copyright header:\n{files_list}")


if __name__ == "__main__":
    test_copyright()
