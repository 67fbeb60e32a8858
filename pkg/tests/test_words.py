from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiralia.words import (
    AlphabetMismatchError,
    PresentationSyntaxError,
    UnknownGeneratorError,
    Word,
    commutator,
    conjugate,
    format_presentation,
    format_word,
    invert,
    multiply,
    parse_presentation,
    parse_word,
    power,
)

AB = ("a", "b")


def w(text, names=AB):
    return parse_word(text, names)


syllables = st.lists(
    st.tuples(st.integers(0, 2), st.integers(-4, 4).filter(bool)), max_size=12
)
words3 = syllables.map(lambda s: Word.build(("a", "b", "c"), s))


def test_parse_cyclic():
    pres = parse_presentation("gens a; rels a^5;")
    assert len(pres.alphabet) == 1
    assert len(pres.relators) == 1 and len(pres.relators[0]) == 5


def test_parse_tight_relators():
    pres = parse_presentation("gens s,t; rels s^3, t^6, (s*t)^2, [s,t^2];")
    assert len(pres.relators) == 4
    assert pres.relators[3] == w("s^-1*t^-2*s*t^2", ("s", "t"))


def test_zero_exponent_rejected():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens a; rels a^0;")


def test_syntax_error_has_position():
    with pytest.raises(PresentationSyntaxError) as ex:
        parse_presentation("gens a;\nrels a^2 ) ;")
    assert ex.value.line == 2


def test_unknown_generator():
    with pytest.raises(UnknownGeneratorError):
        parse_presentation("gens a; rels b^2;")


def test_comments_and_optional_star():
    pres = parse_presentation("# header\ngens a, b;  # names\nrels a^2, b^3, (a b)^2;")
    assert pres.relators[2] == w("a*b*a*b")


def test_nested_commutator_left_normed():
    names = ("x", "y", "z")
    x, y, z = (Word.gen(names, n) for n in names)
    assert parse_word("[x, y, z]", names) == commutator(commutator(x, y), z)


def test_multiply_examples():
    assert w("a*b") * w("b^-1*a") == w("a^2")
    assert Word.identity(AB) * w("a*b^3") == w("a*b^3")
    # the two commutators are mutually inverse, so everything cancels
    assert w("a^-1*b^-1*a*b") * w("b^-1*a^-1*b*a") == Word.identity(AB)


def test_invert_commutator_power_examples():
    assert invert(w("a^2*b^-1")) == w("b*a^-2")
    assert commutator(w("a"), w("b")) == w("a^-1*b^-1*a*b")
    assert power(w("a*b"), 2) == w("a*b*a*b")
    assert conjugate(w("a"), w("b")) == w("b^-1*a*b")


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        multiply(w("a"), Word.gen(("a", "c"), "a"))


def test_raw_constructor_validates():
    with pytest.raises(ValueError):
        Word(AB, ((0, 1), (0, 2)))
    with pytest.raises(ValueError):
        Word(AB, ((0, 0),))


@given(words3)
def test_reduction_idempotent(u):
    assert Word.build(u.alphabet, u.syllables) == u


@given(words3)
def test_double_inverse(u):
    assert invert(invert(u)) == u
    assert multiply(u, invert(u)) == Word.identity(u.alphabet)


@given(words3, words3, words3)
def test_associative(u, v, x):
    assert (u * v) * x == u * (v * x)


@given(words3, st.integers(-5, 5))
def test_power_matches_repeated_product(u, n):
    expect = Word.identity(u.alphabet)
    for _ in range(abs(n)):
        expect = expect * (u if n > 0 else invert(u))
    assert power(u, n) == expect


@settings(max_examples=50)
@given(st.lists(words3.filter(bool), min_size=1, max_size=4))
def test_presentation_round_trip(rels):
    from chiralia.words import Presentation

    pres = Presentation.from_words(("a", "b", "c"), rels, label="rt")
    again = parse_presentation(format_presentation(pres), "rt")
    assert again.relators == pres.relators
    assert again.names == pres.names


@given(words3)
def test_format_parse_word(u):
    assert parse_word(format_word(u), u.alphabet) == u
