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
File : print_utils.py
Purpose: This file contains utility functions to print tables to the console.

Functions:
    - print_ranking: Print a ranked (name, score) list as a table
    - print_rows: Print an arbitrary list of rows under given headers

Authors:
    discoloc contributors

Version Info:
    14/Oct/2026: Initial version
"""

from typing import Iterable, Optional, Sequence, Tuple

from rich.console import Console
from rich.table import Table


def print_ranking(
    title: str, ranked: Sequence[Tuple[str, float]], limit: Optional[int] = None
) -> None:
    """
    This function prints a ranking as a rank/name/score table.

    Args:
        title: str: Title of the table
        ranked: Sequence[Tuple[str, float]]: (name, score) pairs in rank order
        limit: Optional[int]: Print at most this many rows

    Returns:
        None
    """
    rows = [
        (str(rank), name, f"{score:.6g}")
        for rank, (name, score) in enumerate(ranked[:limit] if limit else ranked, 1)
    ]
    print_rows(title, ["rank", "name", "score"], rows)


def print_rows(title: str, headers: Sequence[str], rows: Iterable[Sequence]) -> None:
    """
    This function prints rows of arbitrary width under the given headers.

    Args:
        title: str: Title of the table
        headers: Sequence[str]: Column names
        rows: Iterable[Sequence]: Row values, converted with ``str``

    Returns:
        None
    """
    console = Console()
    table = Table(show_header=True, header_style="bold magenta", title=title)
    for header in headers:
        table.add_column(header)
    for row in rows:
        table.add_row(*[str(value) for value in row])
    console.print(table)
