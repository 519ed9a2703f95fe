import json

import numpy as np
import pytest

from exptransform.cli import main, parse_complex


@pytest.fixture()
def disk_json(tmp_path):
    path = tmp_path / "disk.json"
    path.write_text(json.dumps({"kind": "disk", "a": [0, 0], "R": 1}))
    return str(path)


@pytest.fixture()
def annulus_json(tmp_path):
    path = tmp_path / "annulus.json"
    path.write_text(json.dumps({"kind": "annulus", "r": 1, "R": 2}))
    return str(path)


@pytest.fixture()
def bernoulli_json(tmp_path):
    path = tmp_path / "bern.json"
    path.write_text(
        json.dumps(
            {
                "kind": "lemniscate",
                "num": [[-1, 0], [0, 0], [1, 0]],
                "den": [[1, 0]],
                "seed": None,
            }
        )
    )
    return str(path)


def test_parse_complex():
    assert parse_complex("2+3i") == 2 + 3j
    assert parse_complex("2 + 3 i") == 2 + 3j
    assert parse_complex("-1.5-2.5i") == -1.5 - 2.5j
    assert parse_complex("3i") == 3j
    assert parse_complex("2") == 2
    with pytest.raises(ValueError):
        parse_complex("nonsense+")


def test_transform_closed(disk_json, capsys):
    rc = main(["transform", "--domain", disk_json, "--z", "2+0i", "--w", "2+0i", "--method", "closed"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["value"][0] - 0.75) < 1e-12
    assert out["method"] == "closed_form"


def test_transform_moments_agrees(disk_json, capsys):
    rc = main(["transform", "--domain", disk_json, "--z", "2+0i", "--w", "2+0i", "--method", "moments"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["value"][0] - 0.75) < 1e-10


def test_transform_eval_positional(disk_json, capsys):
    rc = main(
        [
            "transform",
            "eval",
            "--domain",
            disk_json,
            "--z",
            "2+0i",
            "--w",
            "2+0i",
            "--method",
            "closed",
        ]
    )
    assert rc == 0


def test_transform_missing_file_exit2(capsys):
    rc = main(["transform", "--domain", "/nonexistent.json", "--z", "2", "--w", "2"])
    assert rc == 2


def test_transform_interior_point_exit3(disk_json, capsys):
    rc = main(
        [
            "transform",
            "--domain",
            disk_json,
            "--z",
            "0.5",
            "--w",
            "2",
            "--method",
            "quadrature",
            "--resolution",
            "128",
        ]
    )
    assert rc == 3


def test_transform_bit_stable(disk_json, capsys):
    args = [
        "transform",
        "--domain",
        disk_json,
        "--z",
        "2+1i",
        "--w",
        "3-1i",
        "--method",
        "quadrature",
        "--resolution",
        "200",
    ]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second


def test_pushforward_method(disk_json, tmp_path, capsys):
    fmap = tmp_path / "f.json"
    fmap.write_text(json.dumps({"num": [[0, 0], [0, 0], [1, 0]], "den": [[1, 0]]}))
    rc = main(
        [
            "transform",
            "--domain",
            disk_json,
            "--z",
            "2",
            "--w",
            "2",
            "--method",
            "pushforward",
            "--map",
            str(fmap),
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["value"][0] - 0.75) < 1e-9


def test_moments_csv(bernoulli_json, capsys):
    rc = main(["moments", "--domain", bernoulli_json, "--maxdeg", "2", "--closed-form"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "p,q,re,im"
    table = {}
    for line in lines[1:]:
        p, q, re, im = line.split(",")
        table[(int(p), int(q))] = complex(float(re), float(im))
    assert abs(table[(1, 1)] - 0.5) < 1e-15
    assert abs(table[(0, 0)] - 2 / np.pi) < 1e-15
    assert table[(1, 0)] == 0


def test_resultant_polynomials(capsys):
    rc = main(["resultant", "--A", "[[-1,0],[0,0],[1,0]]", "--B", "[[-4,0],[0,0],[1,0]]"])
    assert rc == 0
    re, im = capsys.readouterr().out.split()
    assert abs(float(re) - 9) < 1e-10 and abs(float(im)) < 1e-10


def test_resultant_meromorphic(tmp_path, capsys):
    fj = tmp_path / "f.json"
    gj = tmp_path / "g.json"
    fj.write_text(json.dumps({"num": [[0, 0], [1, 0]], "den": [[1, 0]]}))
    gj.write_text(json.dumps({"num": [[-1, 0], [1, 0]], "den": [[1, 0], [1, 0]]}))
    rc = main(["resultant", "--f", str(fj), "--g", str(gj)])
    assert rc == 0
    re, im = capsys.readouterr().out.split()
    assert abs(float(re) + 1) < 1e-10


def test_resultant_missing_args(capsys):
    assert main(["resultant"]) == 2


def test_boundary_components_csv(annulus_json, capsys):
    rc = main(["boundary", "--domain", annulus_json, "--count", "16"])
    assert rc == 0
    blocks = capsys.readouterr().out.strip().split("\n\n")
    assert len(blocks) == 2
    outer = [complex(*map(float, ln.split(","))) for ln in blocks[0].splitlines()]
    assert np.allclose(np.abs(outer), 2.0)


def test_boundary_residual(bernoulli_json, capsys):
    rc = main(["boundary", "--domain", bernoulli_json, "--count", "32"])
    assert rc == 0
    blocks = capsys.readouterr().out.strip().split("\n\n")
    for block in blocks:
        pts = np.array([complex(*map(float, ln.split(","))) for ln in block.splitlines()])
        assert np.abs(np.abs(pts**2 - 1) - 1).max() <= 1e-6


def test_special_subcommands(capsys):
    assert main(["special", "hubbell", "--s", "0.5", "--t", "0.5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] > 0
    assert (
        main(
            [
                "special",
                "f2",
                "--a",
                "1",
                "--b",
                "1",
                "--bp",
                "1",
                "--c",
                "1.5",
                "--cp",
                "1.5",
                "--x",
                "0.1",
                "--y",
                "0.1",
            ]
        )
        == 0
    )
    out = json.loads(capsys.readouterr().out)
    assert out["method"] == "series"
    assert main(["special", "bernoulli-e", "--z", "2+0i", "--w", "2+0i"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["value"][0] - 0.7382272703) < 1e-8


def test_special_region_error_exit3(capsys):
    assert main(["special", "bernoulli-e", "--z", "1", "--w", "2"]) == 3


def test_probe_command(disk_json, capsys):
    rc = main(["probe", "--domain", disk_json, "--dmax", "1", "--samples", "64", "--resolution", "200"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["d"] == 1
    assert out[0]["residual"] < 1e-4


def test_verify_single_check(capsys):
    rc = main(["verify", "--only", "resultants"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "resultants" in out
