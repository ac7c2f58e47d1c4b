import pytest

from acmschemes.inputlang import ParseError, parse, render


TETRA_DOC = """\
ring p=32003 vars=x,y,z,w
ideal IX = x*y, x*z, x*w, y*z, y*w, z*w
free P = -3,-3,-3
form F = x + y
"""


def test_parse_tetrahedron_document():
    doc = parse(TETRA_DOC)
    assert doc.ring.p == 32003
    assert doc.ring.variables == ("x", "y", "z", "w")
    assert len(doc.ideals["IX"].gens) == 6
    assert all(g.degree == 2 for g in doc.ideals["IX"].gens)


def test_parse_free_twists():
    doc = parse(TETRA_DOC)
    assert doc.frees["P"] == (-3, -3, -3)
    assert doc.free_twists_internal("P") == (3, 3, 3)


def test_parse_form():
    doc = parse(TETRA_DOC)
    assert doc.forms["F"].degree == 1


def test_inhomogeneous_generator_rejected():
    text = "ring p=32003 vars=x,y\nideal bad = x + y^2\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "not homogeneous" in str(err.value)
    assert "line 2" in str(err.value)


def test_unknown_variable_has_position():
    text = "ring p=32003 vars=x,y\nideal I = x*q\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "q" in str(err.value) and "line 2" in str(err.value)


def test_duplicate_names_rejected():
    text = "ring p=32003 vars=x,y\nideal I = x\nfree I = -1\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "duplicate" in str(err.value)


def test_single_ring_per_document():
    text = "ring p=32003 vars=x,y\nring p=101 vars=a,b\n"
    with pytest.raises(ParseError):
        parse(text)


def test_ring_must_come_first():
    with pytest.raises(ParseError):
        parse("ideal I = x\n")


def test_composite_characteristic_rejected():
    with pytest.raises(ParseError):
        parse("ring p=15 vars=x,y\n")


def test_comments_and_blank_lines():
    text = "# leading comment\n\nring p=32003 vars=x,y  # trailing\n\nideal I = x*x - y*y\n"
    doc = parse(text)
    assert len(doc.ideals["I"].gens) == 1


def test_parentheses_and_powers():
    text = "ring p=32003 vars=x,y\nform F = (x + y)^2 - 2*x*y\n"
    doc = parse(text)
    x, y = doc.ring.gens()
    assert doc.forms["F"] == x * x + y * y


def test_unicode_minus_accepted():
    text = "ring p=32003 vars=x,y\nfree P = −3,−3\n"
    doc = parse(text)
    assert doc.frees["P"] == (-3, -3)


def test_round_trip():
    doc = parse(TETRA_DOC)
    doc2 = parse(render(doc))
    assert doc2.ring == doc.ring
    assert {n: h.gens for n, h in doc2.ideals.items()} == {
        n: h.gens for n, h in doc.ideals.items()
    }
    assert doc2.frees == doc.frees
    assert doc2.forms == doc.forms


def test_round_trip_with_negative_coefficients():
    text = "ring p=32003 vars=x,y,z,w\nideal I = x*y - z*w, 3*x^2 - 4*y^2\n"
    doc = parse(text)
    doc2 = parse(render(doc))
    assert {n: h.gens for n, h in doc2.ideals.items()} == {
        n: h.gens for n, h in doc.ideals.items()
    }
