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
File: log_utils.py
Purpose: Logger factory used across discoloc. Records are rendered on the
console through rich, the same library print_utils uses for tables.

Functions:
    - get_logger: Return a module logger attached to the shared rich handler

Authors:
    discoloc contributors

Version Info:
    14/Oct/2026: Initial version
"""

import logging
import os

from rich.logging import RichHandler

_ROOT_NAME = "discoloc"
_configured = False


def _configure_root() -> logging.Logger:
    global _configured
    root = logging.getLogger(_ROOT_NAME)
    if not _configured:
        level = os.environ.get("DISCOLOC_LOG_LEVEL", "INFO").upper()
        handler = RichHandler(show_path=False, rich_tracebacks=False, markup=False)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        root.addHandler(handler)
        root.setLevel(level)
        _configured = True
    return root


def get_logger(name: str) -> logging.Logger:
    """
    This function returns a logger under the ``discoloc`` hierarchy.

    Args:
        name: str: Usually ``__name__`` of the calling module

    Returns:
        logging.Logger: Logger whose records go to the shared rich handler
    """
    _configure_root()
    if not name.startswith(_ROOT_NAME):
        name = f"{_ROOT_NAME}.{name}"
    return logging.getLogger(name)
