"""Text syntax for parameters and the catalog file format.

Expression grammar (whitespace-insensitive)::

    param    := "0" | segment ("(+)" segment)*
    segment  := "St(" INT "," IDENT ")" twist?  |  IDENT twist?
    twist    := "*" "nu" "^" RATIONAL
    RATIONAL := ["+"|"-"] INT ("/" INT)?

A bare identifier means ``St(1, <ident>)``; ``0`` denotes the empty
parameter, which is also how it prints.  Twists are exact rationals; there
is no decimal syntax, so a float can never sneak in through text.  All
parse errors carry a 1-based line/column span pointing into the input.

Catalog files are INI-style sections, one per label::

    [cuspidal.q8]
    dim = 2
    type = symplectic     # or orthogonal | none
    model = q8            # optional built-in model id
    dual = ...            # required iff type = none
    unitary = true        # optional, default true

Loading validates the whole catalog: duals must be mutually declared, and
a declared type must match the Frobenius-Schur indicator of its model.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CatalogError,
    ConsistencyError,
    ParseError,
    SourceSpan,
)
from .group_models import Catalog, CatalogEntry, IrrepModel, builtin_models
from .param_core import CuspidalLabel, Segment, SelfDualityType, WDParameter

__all__ = ["SourceSpan", "parse_param", "print_param", "load_catalog"]


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int

    @property
    def length(self) -> int:
        return max(1, len(self.text))


_PUNCT = set("(),*^/+-")


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
            continue
        if text.startswith("(+)", i):
            tokens.append(_Token("(+)", "(+)", line, col))
            i += 3
            col += 3
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col, 1)
    # end-of-input marker, clamped onto the last column so error spans
    # always point inside the text
    tokens.append(_Token("EOF", "", line, max(1, col - 1)))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[_Token], catalog: Catalog):
        self.tokens = tokens
        self.pos = 0
        self.catalog = catalog

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token,
             expected: tuple[str, ...] = ()) -> ParseError:
        return ParseError(message, tok.line, tok.col, tok.length, expected)

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            got = repr(tok.text) if tok.text else "end of input"
            raise self.fail(f"expected {what}, got {got}", tok, (kind,))
        return self.advance()

    def param(self) -> tuple[Segment, ...]:
        if (self.peek().kind == "INT" and self.peek().text == "0"
                and self.peek(1).kind == "EOF"):
            self.advance()
            return ()
        segments = [self.segment()]
        while self.peek().kind == "(+)":
            self.advance()
            segments.append(self.segment())
        tok = self.peek()
        if tok.kind != "EOF":
            raise self.fail(f"unexpected trailing input {tok.text!r}", tok,
                            ("(+)",))
        return tuple(segments)

    def segment(self) -> Segment:
        tok = self.peek()
        if tok.kind != "IDENT":
            got = repr(tok.text) if tok.text else "end of input"
            raise self.fail(f"expected a segment, got {got}", tok,
                            ("St", "IDENT"))
        if tok.text == "St":
            self.advance()
            self.expect("(", "'('")
            k_tok = self.expect("INT", "a block length")
            k = int(k_tok.text)
            if k < 1:
                raise self.fail("block length must be at least 1", k_tok)
            self.expect(",", "','")
            name_tok = self.expect("IDENT", "a cuspidal label")
            self.expect(")", "')'")
        else:
            name_tok = self.advance()
            k = 1
        twist = Fraction(0)
        if self.peek().kind == "*":
            twist = self.twist()
        return Segment(self.lookup(name_tok), k, twist)

    def lookup(self, tok: _Token) -> CuspidalLabel:
        try:
            return self.catalog.label(tok.text)
        except CatalogError:
            raise CatalogError(
                f"{tok.line}:{tok.col}: unknown cuspidal label "
                f"{tok.text!r}") from None

    def twist(self) -> Fraction:
        self.advance()  # '*'
        nu_tok = self.expect("IDENT", "'nu'")
        if nu_tok.text != "nu":
            raise self.fail(f"expected 'nu', got {nu_tok.text!r}", nu_tok,
                            ("nu",))
        self.expect("^", "'^'")
        return self.rational()

    def rational(self) -> Fraction:
        sign = 1
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.advance()
            if tok.kind == "-":
                sign = -1
        num_tok = self.expect("INT", "an integer")
        numerator = sign * int(num_tok.text)
        if self.peek().kind != "/":
            return Fraction(numerator)
        self.advance()
        den_tok = self.expect("INT", "a denominator")
        if int(den_tok.text) == 0:
            raise self.fail("zero denominator", den_tok)
        return Fraction(numerator, int(den_tok.text))


def parse_param(text: str, catalog: Catalog) -> WDParameter:
    """Parse an expression like ``St(3,q8) (+) chi3 * nu^1/2``.

    Raises :class:`ParseError` with a span for syntax problems and
    :class:`CatalogError` for identifiers the catalog does not know.
    """
    return WDParameter(_Parser(_lex(text), catalog).param())


def print_param(p: WDParameter) -> str:
    """Canonical text for a parameter; inverse of :func:`parse_param`."""
    if not p.segments:
        return "0"
    return " (+) ".join(_print_segment(s) for s in p.segments)


def _print_segment(s: Segment) -> str:
    base = s.cuspidal.name if s.k == 1 else f"St({s.k},{s.cuspidal.name})"
    if s.twist:
        base += f" * nu^{s.twist}"
    return base


# ---------------------------------------------------------------------------
# catalog files


_SECTION_PREFIX = "cuspidal."
_KNOWN_KEYS = {"dim", "type", "dual", "model", "unitary"}


def _section_line(text: str, section: str) -> int:
    needle = f"[{section}]"
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip().startswith(needle):
            return i
    return 1


def _strip_quotes(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "'\"":
        return value[1:-1]
    return value


def _parse_bool(value: str, where: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConsistencyError(f"{where}: expected a boolean, got {value!r}")


def load_catalog(text: str,
                 models: dict[str, IrrepModel] | None = None) -> Catalog:
    """Load and fully validate a catalog from its text form.

    ``models`` maps model ids to representations; by default the built-in
    registry.  Raises :class:`ParseError` for malformed text and
    :class:`ConsistencyError` for semantic problems (bad duals, indicator
    mismatches, unknown model ids).
    """
    registry = builtin_models() if models is None else models
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str  # keep key case
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        lineno = getattr(exc, "lineno", None)
        if lineno is None and getattr(exc, "errors", None):
            lineno = exc.errors[0][0]
        first = str(exc).splitlines()[0]
        raise ParseError(f"catalog: {first}", lineno or 1, 1) from None

    entries: dict[str, CatalogEntry] = {}
    for section in parser.sections():
        if not section.startswith(_SECTION_PREFIX):
            raise ParseError(
                f"catalog: unknown section [{section}]; expected "
                f"[cuspidal.<name>]", _section_line(text, section), 1)
        name = section[len(_SECTION_PREFIX):]
        where = f"[{section}]"
        keys = {k: _strip_quotes(v) for k, v in parser.items(section)}
        unknown = sorted(set(keys) - _KNOWN_KEYS)
        if unknown:
            raise ConsistencyError(f"{where}: unknown keys {unknown}")
        for required in ("dim", "type"):
            if required not in keys:
                raise ConsistencyError(f"{where}: missing key {required!r}")
        try:
            dim = int(keys["dim"])
        except ValueError:
            raise ConsistencyError(
                f"{where}: dim must be an integer, got "
                f"{keys['dim']!r}") from None
        try:
            sd_type = SelfDualityType(keys["type"])
        except ValueError:
            raise ConsistencyError(
                f"{where}: type must be one of orthogonal, symplectic, "
                f"none; got {keys['type']!r}") from None
        unitary = _parse_bool(keys.get("unitary", "true"), where)
        model_id = keys.get("model")
        label = CuspidalLabel(name, dim, sd_type,
                              dual_name=keys.get("dual", ""),
                              unitary=unitary, model=model_id)
        model = None
        if model_id is not None:
            model = registry.get(model_id)
            if model is None:
                raise ConsistencyError(
                    f"{where}: unknown model id {model_id!r}; available: "
                    f"{sorted(registry)}")
        entries[name] = CatalogEntry(label, model)

    catalog = Catalog(entries)
    catalog.validate()
    return catalog
