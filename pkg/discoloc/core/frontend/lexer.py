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
    Module: lexer.py

    Tokenizer for MiniFort. Source text is split into logical lines (free form,
    ``!`` comments, ``&`` continuation, ``;`` separators) and each logical line
    into tokens. Identifiers and keywords are lower-cased.

    Classes:
        Token: Kind, text and column of a lexeme.
        LogicalLine: One statement's worth of source with its starting line.
        LexError: Raised when a character cannot start any token.

    Functions:
        logical_lines: Join continuations and strip comments.
        tokenize: Split one logical line into tokens.

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

import re
from dataclasses import dataclass
from typing import Iterator, List


class LexError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


@dataclass(frozen=True)
class LogicalLine:
    line: int
    text: str


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>'(?:[^']|'')*'|"(?:[^"]|"")*")
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eEdD][+-]?\d+)?(?:_\w+)?)
  | (?P<dotop>\.(?:and|or|not|eqv|neqv|eq|ne|lt|le|gt|ge|true|false)\.)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>\*\*|//|==|/=|<=|>=|=>|::|\(/|/\)|[-+*/=<>(),:%\[\]])
    """,
    re.VERBOSE | re.IGNORECASE,
)

_DOT_TO_SYMBOL = {
    ".eq.": "==",
    ".ne.": "/=",
    ".lt.": "<",
    ".le.": "<=",
    ".gt.": ">",
    ".ge.": ">=",
}


def _strip_comment(raw: str) -> str:
    quote = None
    for i, ch in enumerate(raw):
        if quote:
            if ch == quote:
                quote = None
        elif ch in ("'", '"'):
            quote = ch
        elif ch == "!":
            return raw[:i]
    return raw


def _split_semicolons(text: str) -> List[str]:
    parts, quote, start = [], None, 0
    for i, ch in enumerate(text):
        if quote:
            if ch == quote:
                quote = None
        elif ch in ("'", '"'):
            quote = ch
        elif ch == ";":
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def logical_lines(text: str) -> Iterator[LogicalLine]:
    """
    Yield the logical lines of ``text``.

    A logical line starts on the first physical line that contributes to it;
    blank and comment-only lines produce nothing.

    Args:
        text (str): Whole MiniFort source.

    Yields:
        LogicalLine: Joined statement text and its 1-based starting line.
    """
    pending, start = "", 0
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).rstrip()
        if not body.strip():
            continue
        stripped = body.lstrip()
        if pending and stripped.startswith("&"):
            stripped = stripped[1:]
        if not pending:
            start = number
        if stripped.endswith("&"):
            pending += stripped[:-1] + " "
            continue
        joined = pending + stripped
        pending = ""
        for piece in _split_semicolons(joined):
            if piece.strip():
                yield LogicalLine(start, piece.strip())
    if pending.strip():
        yield LogicalLine(start, pending.strip())


def tokenize(text: str) -> List[Token]:
    """
    Split one logical line into tokens.

    Args:
        text (str): Statement text without comments.

    Returns:
        List[Token]: Tokens in order, whitespace dropped.

    Raises:
        LexError: On a character that starts no token.
    """
    tokens, pos = [], 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise LexError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        lexeme = match.group()
        if kind == "name":
            tokens.append(Token("name", lexeme.lower(), pos))
        elif kind == "dotop":
            lowered = lexeme.lower()
            if lowered in (".true.", ".false."):
                tokens.append(Token("literal", lowered, pos))
            else:
                tokens.append(Token("op", _DOT_TO_SYMBOL.get(lowered, lowered), pos))
        elif kind == "number":
            tokens.append(Token("literal", lexeme.lower(), pos))
        elif kind == "string":
            tokens.append(Token("literal", lexeme, pos))
        elif kind == "op":
            tokens.append(Token("op", lexeme, pos))
        pos = match.end()
    return tokens
