#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
pyparsing grammars for map descriptors, Orlicz descriptors and config
documents.

    expr  := term ("@" term)*          composition, applied right to left
    term  := "conj(" expr ")" | name [":" complex ("," complex)*]

Complex literals look like 0.5, -0.3+0.1i, 2i, i or 1e-3.
"""

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

import pyparsing as pp

from carleson_lab.internal.exceptions import ParseError

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"


def _to_complex(text: str) -> complex:
    text = re.sub(r"(?<![\d.])i", "1i", text.replace(" ", ""))
    return complex(text.replace("i", "j"))


def _parse_complex(s, loc, toks):
    return [_to_complex(toks[0])]


complex_value = pp.Regex(
    r"[+-]?(?:(?:{n})?i|{n}(?:[+-](?:{n})?i)?)".format(n=_NUMBER)
).setParseAction(_parse_complex)


@dataclass(frozen=True)
class MapTerm:
    name: str
    args: Tuple[complex, ...] = ()


@dataclass(frozen=True)
class ConjTerm:
    inner: Tuple[Union[MapTerm, "ConjTerm"], ...]


Term = Union[MapTerm, ConjTerm]

name = pp.Word(pp.alphas, pp.alphanums + "_")

arguments = pp.Suppress(":") + pp.Group(pp.delimitedList(complex_value))

map_term = (name + pp.Optional(arguments)).setParseAction(
    lambda toks: [MapTerm(toks[0].lower(), tuple(toks[1]) if len(toks) > 1 else ())]
)

expression = pp.Forward()

conj_term = (
    pp.Suppress(pp.CaselessKeyword("conj")) + pp.Suppress("(") + expression + pp.Suppress(")")
).setParseAction(lambda toks: [ConjTerm(tuple(toks))])

term = conj_term | map_term

expression <<= pp.delimitedList(term, delim="@")


def _raise(text: str, e: pp.ParseException, line=None, key=None):
    raise ParseError(
        "cannot parse {!r} at column {}: {}".format(text, e.col, e.msg),
        line=line,
        key=key,
    )


def parse_expression(text: str, key: str = None) -> Tuple[Term, ...]:
    try:
        return tuple(expression.parseString(text.strip(), parseAll=True))
    except pp.ParseException as e:
        _raise(text, e, key=key)


def parse_term(text: str, key: str = None) -> MapTerm:
    try:
        return map_term.parseString(text.strip(), parseAll=True)[0]
    except pp.ParseException as e:
        _raise(text, e, key=key)


def parse_complex(text: str, key: str = None) -> complex:
    try:
        return complex_value.parseString(text.strip(), parseAll=True)[0]
    except pp.ParseException as e:
        _raise(text, e, key=key)


# config documents: `key = value` lines, `#` comments, quoted or bare values

identifier = pp.Word(pp.alphas + "_", pp.alphanums + "_-")

quoted_value = pp.quotedString.copy().setParseAction(pp.removeQuotes)

bare_value = pp.Regex(r"[^#\s][^#]*").setParseAction(lambda toks: [toks[0].strip()])

config_line = (
    identifier
    + pp.Suppress("=")
    + (quoted_value | bare_value)
    + pp.Suppress(pp.Optional(pp.pythonStyleComment))
)


def parse_config_text(text: str) -> List[Tuple[int, str, str]]:
    """(line number, key, raw value) for every assignment of the document."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            key, value = config_line.parseString(stripped, parseAll=True)
        except pp.ParseException as e:
            _raise(stripped, e, line=lineno)
        entries.append((lineno, key.replace("-", "_"), value))
    return entries
