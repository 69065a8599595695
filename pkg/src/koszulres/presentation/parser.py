# Copyright Tomer Figenblat.
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

"""Koszul resolutions presentation parser module.

The presentation language is line oriented::

    field GF(5)            # or: field Q
    vertices 1 2 3
    arrows
    a : 1 -> 2
    b : 2 -> 3
    relations
    a*b - 2/3*a*b

Section bodies may start on the keyword line, items on one line may be separated
with commas and ``#`` starts a comment.
"""

from dataclasses import dataclass, field
from logging import getLogger
from typing import Any, List, Optional, Tuple, final

import ply.lex as lex
from ply.lex import TOKEN

from ..algebra import Arrow, FieldKind, FieldSpec, Path, PathVector, Quiver
from ..algebra.tools import compose_paths, render_path
from . import Presentation, PresentationError

logger = getLogger(__name__)

reserved = {
    "field": "FIELD",
    "vertices": "VERTICES",
    "arrows": "ARROWS",
    "relations": "RELATIONS",
}

tokens = (
    "ID",
    "INT",
    "COLON",
    "ARROW",
    "STAR",
    "PLUS",
    "MINUS",
    "SLASH",
    "LPAREN",
    "RPAREN",
    "COMMA",
    "NEWLINE",
) + tuple(reserved.values())

t_ARROW = r"->"
t_COLON = r":"
t_STAR = r"\*"
t_PLUS = r"\+"
t_MINUS = r"-"
t_SLASH = r"/"
t_LPAREN = r"\("
t_RPAREN = r"\)"
t_COMMA = r","

t_ignore = " \t\r"
t_ignore_COMMENT = r"\#[^\n]*"


def _column(text: str, position: int) -> int:
    return position - text.rfind("\n", 0, position)


@TOKEN(r"[A-Za-z_][A-Za-z0-9_']*")
def t_ID(t: Any) -> Any:
    """Tell the section keywords from identifiers."""
    t.type = reserved.get(t.value, "ID")
    return t


@TOKEN(r"\d+")
def t_INT(t: Any) -> Any:
    """Keep integers as int values."""
    t.value = int(t.value)
    return t


@TOKEN(r"\n")
def t_NEWLINE(t: Any) -> Any:
    """Track line numbers, newlines end statements."""
    t.lexer.lineno += 1
    return t


def t_error(t: Any) -> None:
    """Fail on characters outside the language."""
    raise PresentationError(
        f"unexpected character {t.value[0]!r}",
        t.lexer.lineno,
        _column(t.lexer.lexdata, t.lexpos),
    )


_lexer = lex.lex()

_SECTIONS = ("FIELD", "VERTICES", "ARROWS", "RELATIONS")


@final
@dataclass(frozen=True)
class _Token:
    type: str
    value: Any
    line: int
    column: int


@dataclass
class _Term:
    sign: int
    numerator: int
    denominator: int
    arrows: List[_Token]


@dataclass
class _RawRelation:
    start: _Token
    terms: List[_Term] = field(default_factory=list)


def _error(message: str, token: Optional[_Token]) -> PresentationError:
    if token is None:
        return PresentationError(message)
    return PresentationError(message, token.line, token.column)


def _tokenize(text: str) -> List[List[_Token]]:
    lexer = _lexer.clone()
    lexer.lineno = 1
    lexer.input(text)
    lines: List[List[_Token]] = [[]]
    for tok in iter(lexer.token, None):
        if tok.type == "NEWLINE":
            lines.append([])
            continue
        lines[-1].append(
            _Token(tok.type, tok.value, tok.lineno, _column(text, tok.lexpos))
        )
    return [line for line in lines if line]


class _Cursor:
    """Walk the tokens of a single line."""

    def __init__(self, line: List[_Token]) -> None:
        self._line = line
        self._position = 0

    @property
    def done(self) -> bool:
        return self._position >= len(self._line)

    def peek(self) -> Optional[_Token]:
        return None if self.done else self._line[self._position]

    def accept(self, *types: str) -> Optional[_Token]:
        token = self.peek()
        if token is not None and token.type in types:
            self._position += 1
            return token
        return None

    def expect(self, *types: str) -> _Token:
        token = self.peek()
        if token is None or token.type not in types:
            found = "end of line" if token is None else repr(str(token.value))
            what = " or ".join(t.lower() for t in types)
            last = token or self._line[-1]
            raise _error(f"expected {what}, found {found}", last)
        self._position += 1
        return token


class _PresentationParser:
    """Recursive descent over the tokenized lines."""

    def __init__(self, text: str, field_override: Optional[FieldSpec]) -> None:
        self._text = text
        self._override = field_override
        self._field: Optional[FieldSpec] = None
        self._vertices: List[_Token] = []
        self._arrows: List[Tuple[_Token, _Token, _Token]] = []
        self._relations: List[_RawRelation] = []

    def parse(self) -> Presentation:
        section: Optional[str] = None
        for line in _tokenize(self._text):
            cursor = _Cursor(line)
            head = cursor.accept(*_SECTIONS)
            if head is not None:
                section = head.type
                if section == "FIELD":
                    self._field_line(head, cursor)
                    section = None
                    continue
            if cursor.done:
                continue
            if section is None:
                raise _error("expected a section keyword", cursor.peek())
            while True:
                if section == "VERTICES":
                    self._vertex_item(cursor)
                elif section == "ARROWS":
                    self._arrow_item(cursor)
                else:
                    self._relation_item(cursor)
                if cursor.done:
                    break
                cursor.accept("COMMA")
        return self._assemble()

    def _field_line(self, head: _Token, cursor: _Cursor) -> None:
        if self._field is not None:
            raise _error("field declared twice", head)
        name = cursor.expect("ID")
        if name.value in ("Q", "QQ"):
            self._field = FieldSpec()
        elif name.value == "GF":
            cursor.expect("LPAREN")
            characteristic = cursor.expect("INT")
            cursor.expect("RPAREN")
            try:
                self._field = FieldSpec(FieldKind.PRIME_FIELD, characteristic.value)
            except ValueError as exc:
                raise _error(str(exc), characteristic) from exc
        else:
            raise _error(f"unknown field {name.value!r}, expected Q or GF(p)", name)
        if not cursor.done:
            raise _error("unexpected input after the field", cursor.peek())

    def _vertex_item(self, cursor: _Cursor) -> None:
        self._vertices.append(cursor.expect("ID", "INT"))

    def _arrow_item(self, cursor: _Cursor) -> None:
        name = cursor.expect("ID")
        cursor.expect("COLON")
        origin = cursor.expect("ID", "INT")
        cursor.expect("ARROW")
        terminus = cursor.expect("ID", "INT")
        self._arrows.append((name, origin, terminus))

    def _relation_item(self, cursor: _Cursor) -> None:
        start = cursor.peek()
        assert start is not None
        relation = _RawRelation(start)
        sign_token = cursor.accept("PLUS", "MINUS")
        relation.terms.append(self._term(cursor, sign_token))
        while True:
            sign_token = cursor.accept("PLUS", "MINUS")
            if sign_token is None:
                break
            relation.terms.append(self._term(cursor, sign_token))
        following = cursor.peek()
        if following is not None and following.type != "COMMA":
            raise _error("expected + or - between terms", following)
        self._relations.append(relation)

    def _term(self, cursor: _Cursor, sign_token: Optional[_Token]) -> _Term:
        sign = -1 if sign_token is not None and sign_token.type == "MINUS" else 1
        numerator, denominator = 1, 1
        coefficient = cursor.accept("INT")
        if coefficient is not None:
            numerator = coefficient.value
            if cursor.accept("SLASH"):
                denominator = cursor.expect("INT").value
            cursor.expect("STAR")
        arrows = [cursor.expect("ID")]
        while cursor.accept("STAR"):
            arrows.append(cursor.expect("ID"))
        return _Term(sign, numerator, denominator, arrows)

    def _assemble(self) -> Presentation:
        spec = self._override or self._field or FieldSpec()
        quiver = self._quiver()
        relations = [self._relation(spec, quiver, raw) for raw in self._relations]
        presentation = Presentation.create(spec, quiver, relations)
        logger.debug(
            "parsed %s vertices, %s arrows and %s canonical relations",
            len(quiver.vertices),
            len(quiver.arrows),
            len(presentation.relations),
        )
        return presentation

    def _quiver(self) -> Quiver:
        if not self._vertices:
            raise PresentationError("no vertices declared")
        names: List[str] = []
        for token in self._vertices:
            if str(token.value) in names:
                raise _error(f"duplicate vertex {token.value}", token)
            names.append(str(token.value))
        arrows: List[Arrow] = []
        seen = set()
        for name, origin, terminus in self._arrows:
            if name.value in seen:
                raise _error(f"duplicate arrow {name.value}", name)
            seen.add(name.value)
            for endpoint in (origin, terminus):
                if str(endpoint.value) not in names:
                    raise _error(f"unknown vertex {endpoint.value}", endpoint)
            arrows.append(Arrow(name.value, str(origin.value), str(terminus.value)))
        return Quiver(tuple(names), tuple(arrows))

    def _relation(
        self, spec: FieldSpec, quiver: Quiver, raw: _RawRelation
    ) -> PathVector:
        pairs = []
        degrees = set()
        for term in raw.terms:
            path: Optional[Path] = None
            for token in term.arrows:
                if not quiver.has_arrow(token.value):
                    raise _error(f"unknown arrow {token.value}", token)
                step = quiver.arrow_path(quiver.arrow_index(token.value))
                path = step if path is None else compose_paths(path, step)
                if path is None:
                    joined = "*".join(t.value for t in term.arrows)
                    raise _error(f"path {joined} is not composable", term.arrows[0])
            assert path is not None
            try:
                value = spec.scalar(term.sign * term.numerator, term.denominator)
            except ValueError as exc:
                raise _error(str(exc), term.arrows[0]) from exc
            degrees.add(path.length)
            pairs.append((path, value))
        if len(degrees) > 1:
            listed = ", ".join(str(d) for d in sorted(degrees))
            raise _error(f"mixed-degree relation, degrees {listed}", raw.start)
        degree = degrees.pop()
        if degree < 2:
            raise _error(
                f"relation of degree {degree}, relations need degree 2 or more",
                raw.start,
            )
        vector = PathVector.build(degree, pairs)
        if vector.is_zero:
            raise _error("zero relation after reduction", raw.start)
        return vector


def parse_presentation(text: str, field: Optional[FieldSpec] = None) -> Presentation:
    """Parse the textual presentation of a quiver algebra.

    Args:
        text: the presentation source.
        field: optional ground field, overrides the declared one.

    Return:
        The validated presentation with canonical relations.

    """
    return _PresentationParser(text, field).parse()


def _render_term(spec: FieldSpec, value: Any, path: str, first: bool) -> str:
    rendered = spec.render(value)
    negative = rendered.startswith("-")
    magnitude = rendered.lstrip("-")
    body = path if magnitude == "1" else f"{magnitude}*{path}"
    if first:
        return f"-{body}" if negative else body
    return f"- {body}" if negative else f"+ {body}"


def render_relation(presentation: Presentation, relation: PathVector) -> str:
    """Render one relation as a signed sum of terms."""
    return " ".join(
        _render_term(
            presentation.field,
            value,
            render_path(presentation.quiver, path),
            i == 0,
        )
        for i, (path, value) in enumerate(relation.terms)
    )


def format_presentation(presentation: Presentation) -> str:
    """Render a presentation in the presentation language.

    Args:
        presentation: the presentation to render.

    Return:
        Text that parses back to an equal presentation.

    """
    quiver = presentation.quiver
    lines = [
        f"field {presentation.field}",
        "vertices " + " ".join(quiver.vertices),
        "arrows",
    ]
    lines.extend(f"{a.name} : {a.origin} -> {a.terminus}" for a in quiver.arrows)
    lines.append("relations")
    lines.extend(render_relation(presentation, r) for r in presentation.relations)
    return "\n".join(lines) + "\n"
