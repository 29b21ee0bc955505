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
    Module: parser.py

    Recursive-descent parser for MiniFort, the Fortran subset understood by
    discoloc: one module per file, functions and subroutines with typed
    arguments and declared intents, assignments (including pointer
    assignment), call statements, ``use`` with renames and only-lists,
    derived-type component access through ``%`` and array indexing.

    Statements the parser does not understand become ``kind=other`` with a
    diagnostic; only a malformed module header aborts a unit.

    Classes:
        ExpressionParser: Precedence-climbing parser over one token list.
        UnitParser: Statement-level state machine building a SourceUnit.

    Functions:
        parse_unit: Parse source text into a SourceUnit.
        parse_file: Read and parse one ``.mf90`` file.
        parse_corpus: Parse every ``.mf90`` file of a directory concurrently.

    Dependencies:
        - tqdm: progress bar over corpus files

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from ..errors import FatalSyntax, SourceIoError
from ..utils.log_utils import get_logger
from .ast_nodes import (
    CallNode,
    Declared,
    Expression,
    Literal,
    Operation,
    Statement,
    StatementKind,
    VariableRef,
)
from .lexer import LexError, Token, logical_lines, tokenize
from .units import Diagnostic, Severity, SourceCorpus, SourceUnit, SubprogramDef, UseStatement

logger = get_logger(__name__)

SOURCE_SUFFIX = ".mf90"

TYPE_KEYWORDS = {"real", "integer", "logical", "character", "complex", "double", "type", "class"}
PREFIX_KEYWORDS = {"pure", "elemental", "recursive", "impure"}
CONTROL_KEYWORDS = {
    "if", "else", "elseif", "endif", "do", "enddo", "select", "case", "endselect",
    "exit", "cycle", "return", "stop", "continue", "print", "write", "read",
    "allocate", "deallocate", "nullify", "where", "elsewhere", "endwhere",
    "implicit", "goto", "format", "open", "close", "associate", "endassociate",
    "block", "endblock", "forall", "endforall", "include", "save", "data",
    "external", "intrinsic", "parameter", "dimension", "sequence",
}

_COMPARISONS = ("==", "/=", "<", "<=", ">", ">=")


class _SyntaxError(ValueError):
    """Internal signal for a statement the parser cannot understand."""


@dataclass
class _Range:
    """Index range ``lo:hi``; only ever appears inside an index list."""

    parts: Tuple[Optional[Expression], ...]


class ExpressionParser:
    """
    Precedence-climbing expression parser.

    Precedence from lowest to highest: ``.eqv./.neqv.``, ``.or.``, ``.and.``,
    ``.not.``, comparisons, ``//``, additive (with leading unary sign),
    multiplicative, ``**`` (right associative).

    Args:
        tokens (Sequence[Token]): Tokens of the expression or statement.
        arrays (Set[str]): Names known to be arrays in the current scope.
        pos (int): Start position in ``tokens``.
    """

    def __init__(self, tokens: Sequence[Token], arrays: Set[str], pos: int = 0):
        self.tokens = tokens
        self.arrays = arrays
        self.pos = pos

    # -- token helpers -------------------------------------------------------
    def peek(self, offset: int = 0) -> Optional[Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token is not None and token.text == text and token.kind in ("op", "name")

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def advance(self) -> Token:
        token = self.peek()
        if token is None:
            raise _SyntaxError("unexpected end of statement")
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token is None or token.text != text:
            found = "end of statement" if token is None else repr(token.text)
            raise _SyntaxError(f"expected {text!r}, found {found}")
        return self.advance()

    def expect_name(self) -> str:
        token = self.peek()
        if token is None or token.kind != "name":
            raise _SyntaxError("expected identifier")
        return self.advance().text

    # -- grammar -------------------------------------------------------------
    def parse(self) -> Expression:
        """Parse a full expression and require that every token is consumed."""
        expr = self.expression()
        if not self.at_end():
            raise _SyntaxError(f"unexpected token {self.peek().text!r}")
        return expr

    def expression(self) -> Expression:
        return self._binary_left(self._or_expr, (".eqv.", ".neqv."))

    def _or_expr(self) -> Expression:
        return self._binary_left(self._and_expr, (".or.",))

    def _and_expr(self) -> Expression:
        return self._binary_left(self._not_expr, (".and.",))

    def _not_expr(self) -> Expression:
        if self.at(".not."):
            self.advance()
            return Operation(".not.", (self._not_expr(),))
        return self._comparison()

    def _comparison(self) -> Expression:
        left = self._concat()
        token = self.peek()
        if token is not None and token.kind == "op" and token.text in _COMPARISONS:
            self.advance()
            return Operation(token.text, (left, self._concat()))
        return left

    def _concat(self) -> Expression:
        return self._binary_left(self._additive, ("//",))

    def _additive(self) -> Expression:
        if self.at("-") or self.at("+"):
            sign = self.advance().text
            operand = self._multiplicative()
            left = Operation("neg", (operand,)) if sign == "-" else operand
        else:
            left = self._multiplicative()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = Operation(op, (left, self._multiplicative()))
        return left

    def _multiplicative(self) -> Expression:
        return self._binary_left(self._power, ("*", "/"))

    def _power(self) -> Expression:
        base = self._primary()
        if self.at("**"):
            self.advance()
            if self.at("-") or self.at("+"):
                sign = self.advance().text
                exponent = self._power()
                if sign == "-":
                    exponent = Operation("neg", (exponent,))
            else:
                exponent = self._power()
            return Operation("**", (base, exponent))
        return base

    def _binary_left(self, operand, operators: Tuple[str, ...]) -> Expression:
        left = operand()
        while any(self.at(op) for op in operators):
            op = self.advance().text
            left = Operation(op, (left, operand()))
        return left

    def _primary(self) -> Expression:
        token = self.peek()
        if token is None:
            raise _SyntaxError("expected expression")
        if token.kind == "literal":
            self.advance()
            return Literal(token.text)
        if token.text in ("-", "+"):
            self.advance()
            operand = self._power()
            return Operation("neg", (operand,)) if token.text == "-" else operand
        if token.text == "(/" or token.text == "[":
            closing = "/)" if token.text == "(/" else "]"
            self.advance()
            items = self._expression_list(closing)
            return Operation("array", tuple(items))
        if token.text == "(":
            self.advance()
            first = self.expression()
            if self.at(","):
                self.advance()
                second = self.expression()
                self.expect(")")
                return Operation("complex", (first, second))
            self.expect(")")
            return first
        if token.kind == "name":
            return self.designator()
        raise _SyntaxError(f"unexpected token {token.text!r}")

    def _expression_list(self, closing: str) -> List[Expression]:
        items = []
        if self.at(closing):
            self.advance()
            return items
        while True:
            items.append(self.expression())
            if self.at(","):
                self.advance()
                continue
            self.expect(closing)
            return items

    def _subscript(self):
        """One entry of a parenthesized list: expression, range or keyword argument."""
        if self.peek() is not None and self.peek().kind == "name" and self.at("=", 1):
            keyword = self.advance().text
            self.advance()
            return (keyword, self.expression())
        parts: List[Optional[Expression]] = []
        current: Optional[Expression] = None
        if not (self.at(":") or self.at(",") or self.at(")")):
            current = self.expression()
        if not self.at(":"):
            return current
        parts.append(current)
        while self.at(":"):
            self.advance()
            if self.at(":") or self.at(",") or self.at(")"):
                parts.append(None)
            else:
                parts.append(self.expression())
        return _Range(tuple(parts))

    def _paren_list(self) -> list:
        self.expect("(")
        entries = []
        if self.at(")"):
            self.advance()
            return entries
        while True:
            entries.append(self._subscript())
            if self.at(","):
                self.advance()
                continue
            self.expect(")")
            return entries

    def designator(self) -> Expression:
        """
        Parse ``name[(list)][%name[(list)]]...``.

        A ``%`` chain or a subscripted known array becomes an indexed
        VariableRef; ``name(args)`` otherwise becomes a CallNode whose kind
        is decided later by the symbol table.
        """
        base = self.expect_name()
        indexed = False
        entries = None
        if self.at("("):
            entries = self._paren_list()
        path: List[str] = []
        while self.at("%"):
            self.advance()
            path.append(self.expect_name())
            if self.at("("):
                self._paren_list()
                indexed = True
        if path:
            return VariableRef(base, tuple(path), indexed or entries is not None)
        if entries is None:
            return VariableRef(base)
        has_range = any(isinstance(entry, _Range) for entry in entries)
        if base in self.arrays or has_range:
            return VariableRef(base, (), True)
        args, keywords = [], []
        for entry in entries:
            if isinstance(entry, tuple):
                keywords.append(entry)
            elif entry is None:
                raise _SyntaxError(f"empty argument in call to {base!r}")
            else:
                args.append(entry)
        return CallNode(base, tuple(args), tuple(keywords))

    def call_arguments(self) -> Tuple[Tuple[Expression, ...], Tuple[Tuple[str, Expression], ...]]:
        """Argument list of a ``call`` statement (parentheses optional)."""
        if self.at_end():
            return (), ()
        args, keywords = [], []
        for entry in self._paren_list():
            if isinstance(entry, tuple):
                keywords.append(entry)
            elif isinstance(entry, _Range) or entry is None:
                raise _SyntaxError("malformed call argument")
            else:
                args.append(entry)
        return tuple(args), tuple(keywords)


@dataclass
class _OpenSubprogram:
    name: str
    kind: str
    args: Tuple[str, ...]
    result_name: Optional[str]
    line: int
    statements: List[Statement] = field(default_factory=list)
    arrays: Set[str] = field(default_factory=set)


def _find_top_level(tokens: Sequence[Token], text: str) -> int:
    depth = 0
    for i, token in enumerate(tokens):
        if token.kind != "op":
            continue
        if token.text in ("(", "(/", "["):
            depth += 1
        elif token.text in (")", "/)", "]"):
            depth -= 1
        elif token.text == text and depth == 0:
            return i
    return -1


def _split_top_level(tokens: Sequence[Token], separator: str = ",") -> List[List[Token]]:
    parts, current, depth = [], [], 0
    for token in tokens:
        if token.kind == "op" and token.text in ("(", "(/", "["):
            depth += 1
        elif token.kind == "op" and token.text in (")", "/)", "]"):
            depth -= 1
        if token.kind == "op" and token.text == separator and depth == 0:
            parts.append(current)
            current = []
        else:
            current.append(token)
    parts.append(current)
    return parts


def _texts(tokens: Sequence[Token]) -> List[str]:
    return [t.text for t in tokens]


class UnitParser:
    """
    Builds one SourceUnit from logical lines.

    The parser tracks whether it is in the module specification part or after
    ``contains``, keeps a stack of open subprograms (internal procedures are
    flattened into the module) and the set of arrays visible in the current
    scope so that ``a(i)`` can be told apart from a function call.
    """

    def __init__(self, text: str, path: str):
        self.text = text
        self.path = path
        self.module_name: Optional[str] = None
        self.module_statements: List[Statement] = []
        self.subprograms: List[SubprogramDef] = []
        self.uses: List[UseStatement] = []
        self.diagnostics: List[Diagnostic] = []
        self.stack: List[_OpenSubprogram] = []
        self.module_arrays: Set[str] = set()
        self.declared_names: Set[str] = set()
        self.public_names: Set[str] = set()
        self.private_names: Set[str] = set()
        self.default_private = False
        self.in_type_block = False
        self.in_interface = False
        self.finished = False

    # -- bookkeeping ---------------------------------------------------------
    def _diagnose(self, line: int, message: str, severity: Severity = Severity.WARNING) -> None:
        self.diagnostics.append(Diagnostic(severity, self.module_name or "?", line, message))

    def _emit(self, statement: Statement) -> None:
        if self.stack:
            self.stack[-1].statements.append(statement)
        else:
            self.module_statements.append(statement)

    def _other(self, line: int, text: str, diagnostic: Optional[str] = None) -> None:
        if diagnostic is not None:
            self._diagnose(line, f"unparsed statement: {diagnostic}")
        self._emit(Statement(StatementKind.OTHER, line, text, diagnostic=diagnostic))

    @property
    def _arrays(self) -> Set[str]:
        arrays = set(self.module_arrays)
        for sub in self.stack:
            arrays |= sub.arrays
        return arrays

    # -- driver --------------------------------------------------------------
    def parse(self) -> SourceUnit:
        lines = iter(logical_lines(self.text))
        first = next(lines, None)
        if first is None:
            raise FatalSyntax(self.path, 1, "empty source, expected 'module <name>'")
        try:
            header = tokenize(first.text)
        except LexError as exc:
            raise FatalSyntax(self.path, first.line, str(exc)) from exc
        if (
            len(header) != 2
            or header[0].text != "module"
            or header[1].kind != "name"
            or header[1].text == "procedure"
        ):
            raise FatalSyntax(self.path, first.line, f"malformed module header {first.text!r}")
        self.module_name = header[1].text
        self._emit(Statement(StatementKind.OTHER, first.line, first.text))

        for logical in lines:
            if self.finished:
                self._diagnose(logical.line, "text after 'end module' ignored")
                break
            try:
                tokens = tokenize(logical.text)
            except LexError as exc:
                self._other(logical.line, logical.text, str(exc))
                continue
            self._statement(tokens, logical.line, logical.text)

        if self.stack:
            for open_sub in reversed(self.stack):
                self._diagnose(open_sub.line, f"subprogram '{open_sub.name}' is not terminated")
            while self.stack:
                self._close_subprogram(self.stack[-1].statements[-1].line)
        if not self.finished:
            self._diagnose(
                max((s.line for s in self.module_statements), default=1),
                f"module '{self.module_name}' is not terminated",
            )
        return self._build_unit()

    def _build_unit(self) -> SourceUnit:
        subprogram_names = {sub.name for sub in self.subprograms}
        if self.default_private:
            public = set(self.public_names)
        else:
            public = (self.declared_names | subprogram_names | self.public_names) - self.private_names
        return SourceUnit(
            module_name=self.module_name,
            path=self.path,
            statements=tuple(self.module_statements),
            subprograms=tuple(self.subprograms),
            uses=tuple(self.uses),
            public_symbols=frozenset(public),
            diagnostics=tuple(self.diagnostics),
            line_count=len(self.text.splitlines()),
        )

    # -- statement dispatch --------------------------------------------------
    def _statement(self, tokens: List[Token], line: int, text: str) -> None:
        words = _texts(tokens)
        head = words[0]

        if self.in_type_block:
            self._emit(Statement(StatementKind.OTHER, line, text))
            if words[:2] == ["end", "type"] or head == "endtype":
                self.in_type_block = False
            return
        if self.in_interface:
            self._emit(Statement(StatementKind.OTHER, line, text))
            if words[:2] == ["end", "interface"] or head == "endinterface":
                self.in_interface = False
            return

        if head in ("end", "endmodule", "endsubroutine", "endfunction") and self._is_end(words):
            return self._end(words, line, text)
        if head == "contains" and len(words) == 1:
            return self._emit(Statement(StatementKind.OTHER, line, text))
        if head == "use":
            return self._use(tokens, line, text)
        bare_or_list = len(words) == 1 or words[1] == "::" or tokens[1].kind == "name"
        if head in ("public", "private") and bare_or_list:
            return self._visibility(tokens, line, text)
        if head == "interface" or (head == "abstract" and words[1:2] == ["interface"]):
            self.in_interface = True
            return self._other(line, text, "interface blocks are not supported")
        if head == "type" and not self._at_open_paren(tokens, 1):
            self.in_type_block = True
            return self._emit(Statement(StatementKind.OTHER, line, text))
        header = self._subprogram_header(tokens)
        if header is not None:
            return self._open_subprogram(header, line, text)
        if head == "call":
            return self._call(tokens, line, text)
        if head in TYPE_KEYWORDS and self._looks_like_declaration(tokens):
            return self._declaration(tokens, line, text)
        if head == "if" and self._at_open_paren(tokens, 1):
            return self._if(tokens, line, text)
        if _find_top_level(tokens, "=") > 0 or _find_top_level(tokens, "=>") > 0:
            if head not in ("do", "forall", "where") or self._is_plain_assignment(tokens):
                return self._assignment(tokens, line, text)
        if head in CONTROL_KEYWORDS or head.startswith("end"):
            return self._emit(Statement(StatementKind.OTHER, line, text))
        return self._other(line, text, f"cannot parse {text!r}")

    @staticmethod
    def _at_open_paren(tokens: Sequence[Token], index: int) -> bool:
        return len(tokens) > index and tokens[index].text == "("

    @staticmethod
    def _is_end(words: List[str]) -> bool:
        if words[0] != "end":
            return True
        return len(words) == 1 or words[1] in ("module", "subroutine", "function")

    @staticmethod
    def _is_plain_assignment(tokens: Sequence[Token]) -> bool:
        return len(tokens) > 1 and tokens[1].text in ("=", "=>")

    def _looks_like_declaration(self, tokens: Sequence[Token]) -> bool:
        if _find_top_level(tokens, "::") > 0:
            return True
        if len(tokens) > 1 and tokens[1].kind == "name":
            return True
        if tokens[0].text == "double":
            return True
        # real(8) x
        if self._at_open_paren(tokens, 1):
            depth = 0
            for i, token in enumerate(tokens[1:], start=1):
                if token.text == "(":
                    depth += 1
                elif token.text == ")":
                    depth -= 1
                    if depth == 0:
                        following = tokens[i + 1] if i + 1 < len(tokens) else None
                        return following is not None and following.kind == "name"
        return False

    # -- module / subprogram structure ---------------------------------------
    def _end(self, words: List[str], line: int, text: str) -> None:
        word = words[0]
        target = words[1] if word == "end" and len(words) > 1 else word[3:] or None
        if target == "module":
            self._emit(Statement(StatementKind.OTHER, line, text))
            while self.stack:
                self._diagnose(line, f"subprogram '{self.stack[-1].name}' closed by 'end module'")
                self._close_subprogram(line)
            self.finished = True
            return
        if self.stack:
            self._emit(Statement(StatementKind.OTHER, line, text))
            self._close_subprogram(line)
            return
        if target is None:
            self._emit(Statement(StatementKind.OTHER, line, text))
            self.finished = True
            return
        self._other(line, text, f"'end {target}' outside of a subprogram")

    def _subprogram_header(self, tokens: List[Token]):
        words = _texts(tokens)
        if "subroutine" not in words and "function" not in words:
            return None
        if words[0] in ("end", "call") or _find_top_level(tokens, "=") >= 0:
            return None
        index = 0
        while index < len(words) and words[index] in PREFIX_KEYWORDS:
            index += 1
        # function type prefix such as real(r8) or type(state_t)
        if index < len(words) and words[index] in TYPE_KEYWORDS:
            if words[index] == "double" and index + 1 < len(words):
                index += 2
            else:
                index += 1
            if index < len(words) and words[index] == "(":
                depth = 0
                while index < len(words):
                    if words[index] == "(":
                        depth += 1
                    elif words[index] == ")":
                        depth -= 1
                        if depth == 0:
                            index += 1
                            break
                    index += 1
            while index < len(words) and words[index] in PREFIX_KEYWORDS:
                index += 1
        if index >= len(words) or words[index] not in ("subroutine", "function"):
            return None
        kind = words[index]
        parser = ExpressionParser(tokens, set(), index + 1)
        try:
            name = parser.expect_name()
            args: List[str] = []
            if parser.at("("):
                parser.advance()
                while not parser.at(")"):
                    args.append(parser.expect_name())
                    if parser.at(","):
                        parser.advance()
                parser.expect(")")
            result_name = None
            if parser.at("result"):
                parser.advance()
                parser.expect("(")
                result_name = parser.expect_name()
                parser.expect(")")
            if not parser.at_end():
                return None
        except _SyntaxError:
            return None
        return kind, name, tuple(args), result_name

    def _open_subprogram(self, header, line: int, text: str) -> None:
        kind, name, args, result_name = header
        if kind == "subroutine" and result_name is not None:
            return self._other(line, text, "result clause on a subroutine")
        open_sub = _OpenSubprogram(name, kind, args, result_name, line)
        self.stack.append(open_sub)
        open_sub.statements.append(Statement(StatementKind.OTHER, line, text))

    def _close_subprogram(self, line: int) -> None:
        open_sub = self.stack.pop()
        if any(sub.name == open_sub.name for sub in self.subprograms):
            self._diagnose(open_sub.line, f"duplicate subprogram '{open_sub.name}' dropped")
            return
        self.subprograms.append(
            SubprogramDef(
                name=open_sub.name,
                kind=open_sub.kind,
                module=self.module_name,
                args=open_sub.args,
                result_name=open_sub.result_name,
                statements=tuple(open_sub.statements),
                line=open_sub.line,
                end_line=line,
            )
        )

    # -- specification statements -------------------------------------------
    def _use(self, tokens: List[Token], line: int, text: str) -> None:
        parts = _split_top_level(tokens[1:])
        module_tokens = [t for t in parts[0] if t.text != "::"]
        if len(module_tokens) != 1 or module_tokens[0].kind != "name":
            return self._other(line, text, "malformed use statement")
        source = module_tokens[0].text
        only: Optional[List[Tuple[str, str]]] = None
        renames: List[Tuple[str, str]] = []
        for part in parts[1:]:
            words = _texts(part)
            if words[:2] == ["only", ":"]:
                only = []
                words = words[2:]
                if words:
                    only.append(self._rename_pair(words))
            elif only is not None:
                only.append(self._rename_pair(words))
            else:
                renames.append(self._rename_pair(words))
        if any(pair is None for pair in (only or [])) or any(pair is None for pair in renames):
            return self._other(line, text, "malformed use list")
        scope = self.stack[-1].name if self.stack else None
        self.uses.append(
            UseStatement(
                source_module=source,
                only_list=tuple(only) if only is not None else None,
                renames=tuple(renames),
                line=line,
                scope=scope,
            )
        )
        self._emit(Statement(StatementKind.OTHER, line, text))

    @staticmethod
    def _rename_pair(words: List[str]) -> Optional[Tuple[str, str]]:
        """(remote, local) from ``local => remote`` or a bare ``name``."""
        if len(words) == 1:
            return words[0], words[0]
        if len(words) == 3 and words[1] == "=>":
            return words[2], words[0]
        return None

    def _visibility(self, tokens: List[Token], line: int, text: str) -> None:
        keyword = tokens[0].text
        names = [t.text for t in tokens[1:] if t.kind == "name"]
        if not names:
            if self.stack:
                return self._other(line, text, f"bare '{keyword}' inside a subprogram")
            self.default_private = keyword == "private"
        elif keyword == "public":
            self.public_names.update(names)
            self.private_names.difference_update(names)
        else:
            self.private_names.update(names)
            self.public_names.difference_update(names)
        self._emit(Statement(StatementKind.OTHER, line, text))

    def _declaration(self, tokens: List[Token], line: int, text: str) -> None:
        split = _find_top_level(tokens, "::")
        if split > 0:
            spec_tokens, entity_tokens = tokens[:split], tokens[split + 1 :]
        else:
            spec_tokens, entity_tokens = self._split_spec_without_colons(tokens)
        spec_parts = _split_top_level(spec_tokens)
        type_spec = " ".join(_texts(spec_parts[0])).replace(" ( ", "(").replace(" )", ")")
        dimensioned = intent = visibility = None
        is_pointer = False
        for attr in spec_parts[1:]:
            words = _texts(attr)
            if not words:
                return self._other(line, text, "empty attribute")
            if words[0] == "dimension":
                dimensioned = True
            elif words[0] == "intent":
                intent = "".join(w for w in words[1:] if w not in ("(", ")"))
                if intent not in ("in", "out", "inout"):
                    return self._other(line, text, f"unknown intent {intent!r}")
            elif words[0] == "pointer":
                is_pointer = True
            elif words[0] in ("public", "private"):
                visibility = words[0]
        entities = []
        for part in _split_top_level(entity_tokens):
            if not part or part[0].kind != "name":
                return self._other(line, text, "malformed declaration entity")
            name = part[0].text
            is_array = bool(dimensioned) or (len(part) > 1 and part[1].text == "(")
            entities.append(Declared(name, type_spec, is_array, intent, is_pointer, visibility))
        if not entities:
            return self._other(line, text, "declaration without entities")

        arrays = self.stack[-1].arrays if self.stack else self.module_arrays
        for entity in entities:
            if entity.is_array:
                arrays.add(entity.name)
            if not self.stack:
                self.declared_names.add(entity.name)
                if visibility == "public":
                    self.public_names.add(entity.name)
                elif visibility == "private":
                    self.private_names.add(entity.name)
        self._emit(Statement(StatementKind.DECLARATION, line, text, declared=tuple(entities)))

    @staticmethod
    def _split_spec_without_colons(tokens: List[Token]):
        """``real(8) x, y`` or ``double precision x``: the type spec ends before
        the first name at depth 0."""
        depth = 0
        for i, token in enumerate(tokens[1:], start=1):
            if token.text == "(":
                depth += 1
            elif token.text == ")":
                depth -= 1
            elif depth == 0 and token.kind == "name" and not (
                tokens[0].text == "double" and i == 1
            ):
                return tokens[:i], tokens[i:]
        return tokens, []

    # -- executable statements -----------------------------------------------
    def _call(self, tokens: List[Token], line: int, text: str) -> None:
        parser = ExpressionParser(tokens, self._arrays, 1)
        try:
            callee = parser.expect_name()
            if parser.at("%"):
                raise _SyntaxError("type-bound procedure calls are not supported")
            args, keywords = parser.call_arguments()
            if not parser.at_end():
                raise _SyntaxError(f"unexpected token {parser.peek().text!r}")
        except _SyntaxError as exc:
            return self._other(line, text, str(exc))
        self._emit(
            Statement(StatementKind.CALL, line, text, callee=callee, args=args, keywords=keywords)
        )

    def _assignment(self, tokens: List[Token], line: int, text: str) -> None:
        split = _find_top_level(tokens, "=>")
        if split < 0:
            split = _find_top_level(tokens, "=")
        arrays = self._arrays
        try:
            if split <= 0 or split == len(tokens) - 1:
                raise _SyntaxError("assignment needs a left and a right side")
            target = ExpressionParser(tokens[:split], arrays).parse()
            if isinstance(target, CallNode):
                # a(i) = ... where a was not declared: the target is still an array element
                target = VariableRef(target.name, (), True)
            if not isinstance(target, VariableRef):
                raise _SyntaxError("left side is not a variable")
            value = ExpressionParser(tokens[split + 1 :], arrays).parse()
        except _SyntaxError as exc:
            return self._other(line, text, str(exc))
        self._emit(Statement(StatementKind.ASSIGNMENT, line, text, lhs=target, rhs=value))

    def _if(self, tokens: List[Token], line: int, text: str) -> None:
        depth, close = 0, -1
        for i, token in enumerate(tokens[1:], start=1):
            if token.text == "(":
                depth += 1
            elif token.text == ")":
                depth -= 1
                if depth == 0:
                    close = i
                    break
        if close < 0:
            return self._other(line, text, "unbalanced parentheses in if")
        rest = tokens[close + 1 :]
        if not rest or _texts(rest) == ["then"]:
            return self._emit(Statement(StatementKind.OTHER, line, text))
        # single-line if: the controlled statement carries the data flow
        inner = " ".join(_texts(rest))
        self._statement(rest, line, inner)


def parse_unit(text: str, path: str = "<string>") -> SourceUnit:
    """
    Parse MiniFort source text into a SourceUnit.

    Args:
        text (str): Source text of one module.
        path (str): File path recorded on the unit and in error messages.

    Returns:
        SourceUnit: Parsed unit; bad statements are kept as ``kind=other`` with a diagnostic.

    Raises:
        FatalSyntax: If the first statement is not ``module <name>``.
    """
    unit = UnitParser(text, path).parse()
    for diagnostic in unit.diagnostics:
        logger.debug(str(diagnostic))
    return unit


def parse_file(path) -> SourceUnit:
    """
    Read and parse one ``.mf90`` file.

    Raises:
        SourceIoError: If the file cannot be read or is not UTF-8.
        FatalSyntax: If the module header is malformed.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SourceIoError(f"cannot read {path}: {exc}") from exc
    return parse_unit(text, str(path))


def source_files(directory) -> List[Path]:
    """Sorted ``.mf90`` files below ``directory``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise SourceIoError(f"source directory {directory} does not exist")
    return sorted(directory.rglob(f"*{SOURCE_SUFFIX}"))


def parse_corpus(directory, max_workers: Optional[int] = None, progress: bool = False) -> SourceCorpus:
    """
    Parse every ``.mf90`` file below ``directory``.

    Files are independent, so they are parsed on a thread pool; the corpus is
    assembled in file order afterwards.

    Args:
        directory: Directory holding the sources.
        max_workers (Optional[int]): Thread pool size, ``None`` for the default.
        progress (bool): Show a tqdm progress bar.

    Returns:
        SourceCorpus: Units sorted by module name.

    Raises:
        SourceIoError: Missing directory, no source files or unreadable file.
        FatalSyntax: A file without a module header.
        ValueError: Two files define the same module.
    """
    files = source_files(directory)
    if not files:
        raise SourceIoError(f"no {SOURCE_SUFFIX} files below {directory}")
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        units = list(
            tqdm(
                pool.map(parse_file, files),
                total=len(files),
                desc="Parsing",
                disable=not progress,
            )
        )
    corpus = SourceCorpus(tuple(units))
    logger.info(
        "parsed %d modules with %d diagnostics from %s",
        len(corpus),
        len(corpus.diagnostics),
        directory,
    )
    return corpus
