import json

import pytest

from vcat.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_SIZE, main, parse_bounds
from vcat.enriched import check_category, vcat_product
from vcat.fixtures import arrow_category, cyclic_two, idempotent, set_functor, small_categories
from vcat.serialize import (
    InputError,
    SizeBounds,
    category_from_json,
    category_to_json,
    functor_from_json,
    functor_to_json,
    load_bundle,
)
from vcat.vfinset import FinSet

V = FinSet()


def run(capsys, *argv):
    code = main(list(argv))
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines() if x.strip()]
    return code, lines


@pytest.mark.parametrize("path, code", [
    ("finset_category.json", EXIT_PASS),
    ("corrupted_category.json", EXIT_FAIL),
    ("non_natural.json", EXIT_FAIL),
    ("oversized_category.json", EXIT_SIZE),
    ("no_such_file.json", EXIT_INPUT),
])
def test_check_exit_codes(capsys, path, code):
    got, lines = run(capsys, "check", path)
    assert got == code
    assert lines


def test_failures_carry_witnesses(capsys):
    _, lines = run(capsys, "check", "corrupted_category.json")
    failed = [r for r in lines if r.get("ok") is False]
    assert failed and any(r.get("failures") for r in failed)


def test_malformed_bundle_is_an_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"categories": [{"name": "x", "objects": ["a"], "arrows": []}]}))
    code, lines = run(capsys, "check", str(bad))
    assert code == EXIT_INPUT and lines[-1]["error"] == "input"
    bad.write_text("{not json")
    assert run(capsys, "check", str(bad))[0] == EXIT_INPUT


def test_build_results(capsys):
    code, (rec,) = run(capsys, "build", "end-hom", "two.json")
    assert code == EXIT_PASS and rec["result"]["size"] == 1
    code, (rec,) = run(capsys, "build", "short-norm", "bilinear_short.json")
    assert code == EXIT_PASS and rec["result"]["value"] == "1" and rec["result"]["short"]
    code, (rec,) = run(capsys, "build", "projective-norm", "projective_norm.json")
    assert rec["result"]["value"] == "1"
    code, (rec,) = run(capsys, "build", "fv-hom", "fv_hom.json")
    assert rec["result"]["size"] == 4
    code, (rec,) = run(capsys, "build", "vcat-product", "finset_category.json", "--categories", "2,Z/2")
    assert code == EXIT_PASS and rec["result"]["objects"] == 2


def test_build_respects_size_bounds(capsys):
    code, _ = run(capsys, "build", "end-hom", "two.json", "--bounds", "max_hom=0")
    assert code == EXIT_SIZE


def test_fixture_dir_is_searched_first(capsys, tmp_path):
    (tmp_path / "two.json").write_text(json.dumps({"source": [1], "target": [3]}))
    code, (rec,) = run(capsys, "build", "fv-hom", "two.json", "--fixture-dir", str(tmp_path))
    assert code == EXIT_PASS and rec["result"]["size"] == 3


def test_acceptance_is_deterministic(capsys):
    first = run(capsys, "acceptance", "--only", "7,8", "--seed", "3")
    second = run(capsys, "acceptance", "--only", "7,8", "--seed", "3")
    strip = [[{k: v for k, v in r.items() if k != "seconds"} for r in lines] for _, lines in (first, second)]
    assert first[0] == second[0] == EXIT_PASS
    assert strip[0] == strip[1]


def test_tightened_bounds_report_partial(capsys):
    code, lines = run(capsys, "acceptance", "--only", "7", "--bounds", "minkowski_points=10")
    assert lines[0]["status"] == "partial" and lines[0]["skipped"]
    assert lines[-1]["partial"] == 1 and code == EXIT_PASS


def test_unknown_criterion_is_an_input_error(capsys):
    assert run(capsys, "acceptance", "--only", "9")[0] == EXIT_INPUT


def test_parse_bounds_forms():
    assert parse_bounds("max_hom=3,max_objects=2", SizeBounds) == SizeBounds(max_objects=2, max_hom=3)
    assert parse_bounds('{"max_hom": 5}', SizeBounds).max_hom == 5
    with pytest.raises(InputError):
        parse_bounds("nonsense=1", SizeBounds)


@pytest.mark.parametrize("C", small_categories(), ids=lambda c: c.name)
def test_category_json_round_trip(C):
    back = category_from_json(json.loads(json.dumps(category_to_json(C))))
    assert back == C


def test_unlabelled_product_round_trips():
    P, _ = vcat_product(V, [arrow_category(), cyclic_two()])
    back = category_from_json(category_to_json(P))
    assert check_category(V, back).ok
    assert back.objects == P.objects and back.hom == P.hom
    assert back.kappa == P.kappa


def test_functor_json_round_trip():
    A, C = cyclic_two(), idempotent()
    F = set_functor((A,), C, lambda x: "*", lambda f: "1", name="F")
    cats = {"Z/2": A, "idempotent": C}
    back = functor_from_json(functor_to_json(F, ["Z/2"], "idempotent"), cats)
    assert back == F


def test_loader_rejects_bad_composites_and_duplicates():
    cat = category_to_json(cyclic_two())
    cat["composition"] = [["s", "s", "missing"]]
    with pytest.raises(InputError):
        category_from_json(cat)
    good = category_to_json(cyclic_two())
    with pytest.raises(InputError):
        load_bundle({"categories": [good, good]})
    with pytest.raises(InputError):
        load_bundle([])
