import json

import pytest

from conftest import cyclic_chain
from ncomplex.complexes import NComplex, NotAnNComplexError, SeqMorphism, kernel_truncate
from ncomplex.groups import PresentedGroup
from ncomplex.io import (
    ParseError,
    decode_int,
    dump_complex,
    dump_morphism,
    encode_int,
    load_complex,
    load_morphism,
    parse_group_spec,
    read_complex,
    read_morphism,
    write_json,
)


def test_round_trip(z8):
    data = dump_complex(z8)
    assert data["n"] == 3
    C = load_complex(json.loads(json.dumps(data)))
    assert isinstance(C, NComplex) and C == z8


def test_big_integers_are_strings():
    big = 2 ** 70
    assert encode_int(big) == str(big) and encode_int(-5) == -5
    assert decode_int(str(big), "x") == big
    C = cyclic_chain(big, 2, 0, 1)
    data = dump_complex(C)
    assert data["objects"][0]["relations"] == [[str(big)]]
    assert load_complex(data) == C


@pytest.mark.parametrize("data, where", [
    ({"objects": []}, "complex"),
    ({"window": {"lo": 0, "hi": 1}, "objects": [{"generators": 1}]}, "complex.objects"),
    ({"window": {"lo": 0, "hi": 0}, "objects": [{"generators": 1, "relations": [[1, 2]]}]},
     "complex.objects[0].relations[0]"),
    ({"window": {"lo": 0, "hi": 1}, "objects": [{"generators": 1}, {"generators": 1}],
      "differentials": [[["x"]]]}, "complex.differentials[0][0][0]"),
    ({"window": {"lo": 0, "hi": 0}, "objects": [{"generators": True}]}, "complex.objects[0].generators"),
])
def test_parse_errors_name_the_path(data, where):
    with pytest.raises(ParseError) as exc:
        load_complex(data)
    assert exc.value.where == where


def test_ill_defined_differential():
    data = {"window": {"lo": 0, "hi": 1},
            "objects": [{"generators": 1, "relations": [[2]]}, {"generators": 1, "relations": [[3]]}],
            "differentials": [[[1]]]}
    with pytest.raises(ParseError):
        load_complex(data)


def test_declared_n_is_certified(z8):
    data = dump_complex(z8)
    data["n"] = 2
    with pytest.raises(NotAnNComplexError):
        load_complex(data)
    assert not isinstance(load_complex(data, certify=False), NComplex)


def test_group_specs():
    assert parse_group_spec("6").invariants == (0, (6,))
    assert parse_group_spec("2,4;1").invariants == (1, (2, 4))
    assert parse_group_spec(";2").invariants == (2, ())
    assert parse_group_spec("0,3").invariants == (1, (3,))
    for bad in ("x", "2;-1", "-3"):
        with pytest.raises(ParseError):
            parse_group_spec(bad)


def test_morphism_files(tmp_path, z8):
    write_json(dump_complex(z8), tmp_path / "c.json")
    write_json({"source": "c.json", "target": "c.json",
                "components": [{"position": j, "matrix": [[1]]} for j in z8.positions]},
               tmp_path / "f.json")
    f = read_morphism(tmp_path / "f.json")
    assert f == SeqMorphism.identity(z8)
    K, k = kernel_truncate(z8, 2)
    g = load_morphism(json.loads(json.dumps(dump_morphism(k))))
    assert g == k
    with pytest.raises(ParseError):
        load_morphism({"source": "missing.json", "target": "c.json"}, tmp_path)


def test_read_complex_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(ParseError):
        read_complex(p)
