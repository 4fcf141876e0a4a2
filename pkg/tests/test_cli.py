import json
import shutil
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from coblecheck.cli import main
from coblecheck.errors import SchemaError
from coblecheck.schema import load_json, validate

DATA = Path(str(resources.files("coblecheck") / "data"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table1_passes(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    assert "9 surfaces over 7 dual graphs" in out


def test_table1_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "--format", "json", "table1")
    _, b, _ = run(capsys, "table1", "--format", "json")
    assert a == b
    doc = json.loads(a)
    assert doc["exit_status"] == 0 and doc["counts"]["FAIL"] == 0
    rows = {(r["graph"], r["n"]) for r in doc["table"]["rows"]}
    assert ("VII", 10) in rows and ("VIII", 4) in rows


def test_variant_graph_fails(capsys):
    code, out, err = run(capsys, "graph", "E7+A1(2)-E11")
    assert code == 1
    assert "FAIL" in out and "Vinberg" in err
    assert "every connected parabolic subdiagram" in out


def test_unknown_graph_is_usage_error(capsys):
    code, _, err = run(capsys, "graph", "E9")
    assert code == 2 and "no graph fixture" in err


def test_graph_from_file(capsys, tmp_path):
    src = DATA / "graphs" / "05-d8.json"
    code, out, _ = run(capsys, "graph", str(src))
    assert code == 0 and "graph D8" in out


def test_verbose_shows_provenance_and_sources(capsys):
    _, out, _ = run(capsys, "graph", "E8", "--verbose")
    assert "provenance:" in out and "source:" in out


def test_conductrix_examples(capsys):
    code, out, _ = run(capsys, "conductrix", "I1*", "--multiple", "--two-section", "E3")
    assert code == 0 and "E3 + E4 + E5 + E6" in out
    code, out, _ = run(capsys, "conductrix", "IV", "--multiple")
    assert code == 0


def test_conductrix_search_bound(capsys):
    code, out, _ = run(capsys, "conductrix", "II*", "--multiple", "--quasi-elliptic")
    assert code == 1 and "--slack 2" in out
    code, _, _ = run(capsys, "conductrix", "II*", "--multiple", "--quasi-elliptic", "--slack", "2")
    assert code == 0


def test_conductrix_bad_fiber(capsys):
    code, _, _ = run(capsys, "conductrix", "I42*")
    assert code == 2


def test_negative_slack_rejected():
    with pytest.raises(SystemExit) as e:
        main(["conductrix", "I3", "--slack", "-1"])
    assert e.value.code == 2


def test_quotient_bundled(capsys):
    code, out, _ = run(capsys, "quotient", "E8", "VIII")
    assert code == 0 and "UNDECIDED" not in out


def test_quotient_all_has_no_failures(capsys):
    code, out, _ = run(capsys, "--format", "json", "quotient")
    doc = json.loads(out)
    assert code == 0 and doc["counts"]["FAIL"] == 0 and doc["counts"]["UNDECIDED"] > 0


def test_fiber_check(capsys):
    code, out, _ = run(capsys, "fiber-check")
    assert code == 0
    code, out, _ = run(capsys, "fiber-check", "I5", "III")
    assert code == 0 and "I5" in out and "III" in out
    code, _, _ = run(capsys, "fiber-check", "I0*")
    assert code == 2


def _corrupt_config(tmp_path):
    doc = json.loads((DATA / "configs" / "e8-host.json").read_text())
    a, b, m = doc["pairs"][0]
    doc["pairs"].append([b, a, int(m) + 1])
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    return p


def test_asymmetric_pairing_file(capsys, tmp_path):
    code, _, err = run(capsys, "quotient", str(_corrupt_config(tmp_path)))
    assert code == 2 and "asymmetric entry" in err


def test_fixture_directory_override(capsys, tmp_path):
    root = tmp_path / "data"
    shutil.copytree(DATA, root)
    code, _, _ = run(capsys, "--fixtures", str(root), "table1")
    assert code == 0
    shutil.copy(_corrupt_config(tmp_path), root / "configs" / "e8-host.json")
    code, _, err = run(capsys, "--fixtures", str(root), "table1")
    assert code == 2 and "asymmetric entry" in err


def test_missing_fixture_directory(capsys, tmp_path):
    code, _, err = run(capsys, "--fixtures", str(tmp_path / "nope"), "table1")
    assert code == 2 and "does not exist" in err


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "coblecheck.cli", "fiber-check", "IV"],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr


# -- documents -----------------------------------------------------------------

def test_bundled_documents_validate():
    for p in sorted(DATA.glob("*/*.json")):
        if p.parent.name != "tables":
            load_json(p)


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d.update(schema_version=2), "schema_version"),
    (lambda d: d.update(kind="poem"), "kind"),
    (lambda d: d["edges"].append(["E1", "E1", 1]), "edges"),
    (lambda d: d["edges"].append(["E1", "Q", 1]), "edges"),
    (lambda d: d["vertices"].append(dict(d["vertices"][0])), "vertices"),
    (lambda d: d["edges"][0].__setitem__(2, 3), "edges/0/2"),
])
def test_graph_schema_errors(mutate, where):
    doc = json.loads((DATA / "graphs" / "01-e8.json").read_text())
    mutate(doc)
    with pytest.raises(SchemaError) as e:
        validate(doc)
    assert e.value.where.startswith(where)


def test_configuration_role_mismatch():
    doc = json.loads((DATA / "configs" / "e8-host.json").read_text())
    doc["curves"][0]["self"] = -3
    with pytest.raises(SchemaError, match="role"):
        validate(doc)


def test_malformed_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    with pytest.raises(SchemaError, match="line 1"):
        load_json(p)
