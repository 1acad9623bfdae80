import json

import numpy as np
import pytest

from isoforge.cli import main
from isoforge.jsonio import dumps


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_generators_euclidean(capsys):
    code, out = run(capsys, "generators", "--dim", "3", "--signature", "euclidean")
    doc = json.loads(out)
    assert code == 0 and doc["version"] == 1
    assert doc["count"] == 6
    labels = [g["label"] for g in doc["generators"]]
    assert sum(label.startswith("rot") for label in labels) == 3
    assert sum(label.startswith("trans") for label in labels) == 3
    assert all(g["round_trip_field"] and g["round_trip_generator"] for g in doc["generators"])
    trans = next(g for g in doc["generators"] if g["label"] == "trans:1")
    assert trans["generator"]["lifted"] is True


def test_generators_lorentz(capsys):
    code, out = run(capsys, "generators", "--dim", "3", "--signature", "lorentz")
    assert code == 0 and json.loads(out)["count"] == 10


def test_dim_one_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generators", "--dim", "1"])
    assert exc.value.code == 2


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--bogus"])
    assert exc.value.code == 2


def test_exp_rotation(capsys):
    code, out = run(capsys, "exp", "--generator", "rot:2,3", "--t", "1.5707963",
                    "--apply", "0,1,0")
    doc = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(doc["image"], [0, 0, 1], atol=1e-7)


def test_exp_translation(capsys):
    _, out = run(capsys, "exp", "--generator", "trans:1", "--t", "1", "--apply", "0,0,0")
    assert json.loads(out)["image"] == [1, 0, 0]


def test_exp_boost_identity(capsys):
    _, out = run(capsys, "exp", "--generator", "boost:1", "--t", "0")
    doc = json.loads(out)
    assert doc["signature"] == "lorentz"
    assert doc["element"]["matrix"] == np.eye(4).tolist()
    assert doc["element"]["det"] == 1


@pytest.mark.parametrize("argv", [
    ["exp", "--generator", "spin:1"],
    ["exp", "--generator", "rot:1,5"],
    ["exp", "--generator", "boost:1", "--signature", "euclidean"],
    ["exp", "--generator", "rot:1,2", "--apply", "1,2"],
])
def test_exp_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_structure_constants_euclidean(capsys):
    code, out = run(capsys, "structure-constants", "--dim", "3", "--signature", "euclidean")
    doc = json.loads(out)
    assert code == 0 and doc["semidirect_split"]["pass"]
    labels = doc["structure_constants"]["labels"]
    c = np.array(doc["structure_constants"]["c"])
    rot = [labels.index(x) for x in ("rot:2,3", "rot:1,3", "rot:1,2")]
    block = c[np.ix_(rot, rot, rot)]
    # so(3) block is eps_ijk up to the sign of the i<j labelling of J_2
    assert np.count_nonzero(block) == 6 and set(np.abs(block[block != 0])) == {1.0}


def test_structure_constants_lorentz(capsys):
    code, out = run(capsys, "structure-constants", "--dim", "3", "--signature", "lorentz")
    doc = json.loads(out)
    assert code == 0
    assert np.array(doc["structure_constants"]["c"]).shape == (10, 10, 10)
    assert doc["closure_residual"] < 1e-10


def test_structure_constants_se2(capsys):
    _, out = run(capsys, "structure-constants", "--dim", "2", "--signature", "euclidean")
    doc = json.loads(out)
    assert doc["structure_constants"]["labels"] == ["trans:1", "trans:2", "rot:1,2"]


def test_verify_with_impossible_tolerance(capsys):
    code, out = run(capsys, "verify", "--dim", "2", "--tolerance", "1e-30")
    doc = json.loads(out)
    assert code == 1 and not doc["pass"]
    failed = {c["name"] for c in doc["checks"] if not c["pass"]}
    assert "metric_preservation" in failed
    # exact checks are not affected by the override
    assert "killing_residual" not in failed


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ISOFORGE_SEED", "17")
    _, out = run(capsys, "generators", "--dim", "2")
    assert json.loads(out)["seed"] == 17
    _, out = run(capsys, "generators", "--dim", "2", "--seed", "3")
    assert json.loads(out)["seed"] == 3


def test_out_file(tmp_path, capsys):
    path = tmp_path / "gens.json"
    code, out = run(capsys, "generators", "--dim", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["count"] == 3


def test_flow_trajectory(capsys):
    code, out = run(capsys, "flow", "--generator", "rot:2,3", "--t", "1.5707963267948966",
                    "--start", "0,1,0", "--steps", "1000", "--stride", "250")
    lines = out.strip().splitlines()
    head = json.loads(lines[0])
    assert code == 0 and head["version"] == 1 and head["steps"] == 1000
    records = [json.loads(line) for line in lines[1:]]
    assert len(records) == 5
    np.testing.assert_allclose(records[-1]["x"], [0, 0, 1], atol=1e-10)


def test_flow_lifted_start(capsys):
    _, out = run(capsys, "flow", "--generator", "strans:0", "--t", "2", "--start", "0,0,0,0",
                 "--signature", "lorentz", "--steps", "4")
    last = json.loads(out.strip().splitlines()[-1])
    assert last["x"] == [2, 0, 0, 0, 1]


def test_json_digits():
    assert dumps(0.1, indent=0) == "0.10000000000000001"
    assert float(dumps(1 / 3, indent=0)) == 1 / 3
    assert dumps({"a": [1.0, 2], "b": True, "c": None}, indent=0) == \
        '{"a": [1, 2], "b": true, "c": null}'
