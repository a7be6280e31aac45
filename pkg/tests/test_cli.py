"""Tests for the crosscrit command line."""

import json

import pytest

from crosscrit import VERSION
from crosscrit.cli import main
from crosscrit.resources.graphs import invert_permutation, relabel, seed_permutation
from crosscrit.serialization import decode_certificate, dumps, graph_document


def _write_graph(path, g, uv=None, w=None):
    path.write_text(dumps(graph_document(g, uv, w)), encoding="utf-8")
    return str(path)


def _dot_edges(lines):
    """Edges of DOT edge lines such as `  3 -- 7 [label="5"];`."""
    edges = set()
    for line in lines:
        if " -- " in line:
            a, b = line.strip().rstrip(";").split(" [")[0].split(" -- ")
            edges.add((int(a), int(b)))
    return edges


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("cli")


@pytest.fixture(scope="module")
def certificate_file(workdir, dodecahedron_instance):
    g, uv = dodecahedron_instance
    source = _write_graph(workdir / "dodecahedron.json", g, uv)
    target = workdir / "certificate.json"
    assert main(["synthesize", "-i", source, "-o", str(target)]) == 0
    return target


class TestValidate:
    """Test suite for the validate command."""

    def test_accepted(self, tmp_path, dodecahedron_instance):
        """Test that an accepted instance exits 0 with an accepting report."""
        g, uv = dodecahedron_instance
        out = tmp_path / "report.json"
        assert main(["validate", "-i", _write_graph(tmp_path / "g.json", g, uv), "-o", str(out)]) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["failures"] == []

    def test_rejected(self, tmp_path, k4):
        """Test that K4 with a designated edge exits 2 and reports g_nonplanar."""
        out = tmp_path / "report.json"
        assert main(["validate", "-i", _write_graph(tmp_path / "k4.json", k4, (0, 1)), "-o", str(out)]) == 2
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["g_nonplanar"] is False

    def test_uv_required(self, tmp_path, k4):
        """Test that a graph without uv exits 4."""
        assert main(["validate", "-i", _write_graph(tmp_path / "k4.json", k4)]) == 4


class TestSynthesizeAndCertify:
    """Test suite for certificate generation and replay."""

    def test_certificate_written(self, certificate_file):
        """Test that synthesize writes a certificate document."""
        data = json.loads(certificate_file.read_text(encoding="utf-8"))
        assert data["certificate"]["c"] == "589825"
        assert data["criticality"]["cr_value"] == str(256 * 7 * 589825)

    def test_certify_replays(self, certificate_file, tmp_path):
        """Test that certify reproduces the stored document byte for byte."""
        out = tmp_path / "replayed.json"
        assert main(["certify", "-i", str(certificate_file), "-o", str(out)]) == 0
        assert out.read_text(encoding="utf-8") == certificate_file.read_text(encoding="utf-8")

    def test_certify_rejects_tampering(self, certificate_file, tmp_path):
        """Test that an edited report exits 3."""
        data = json.loads(certificate_file.read_text(encoding="utf-8"))
        data["lower_bound"]["lower_bound"] = "1"
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(data), encoding="utf-8")
        assert main(["certify", "-i", str(tampered), "-o", str(tmp_path / "out.json")]) == 3

    def test_rejected_input(self, tmp_path, cube_plus_antipodal):
        """Test that synthesizing a rejected instance exits 2."""
        g, uv = cube_plus_antipodal
        assert main(["synthesize", "-i", _write_graph(tmp_path / "cube.json", g, uv)]) == 2

    def test_dot_output(self, tmp_path, dodecahedron_instance):
        """Test that --format dot writes G once per edge with omega as labels."""
        g, uv = dodecahedron_instance
        out = tmp_path / "critical.dot"
        source = _write_graph(tmp_path / "g.json", g, uv)
        assert main(["synthesize", "-i", source, "-o", str(out), "--format", "dot"]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "graph G {"
        assert len(lines) == 2 + 20 + 31
        assert f'  {uv[0]} -- {uv[1]} [label="256"];' in lines
        assert _dot_edges(lines) == set(g.edges)

    def test_seed_order_maps_back(self, tmp_path, dodecahedron_instance):
        """Test that a relabeled run records its permutation and maps back to the input ids."""
        g, uv = dodecahedron_instance
        source = _write_graph(tmp_path / "g.json", g, uv)
        out = tmp_path / "moved.json"
        assert main(["synthesize", "-i", source, "-o", str(out), "--seed-order", "5"]) == 0
        doc = decode_certificate(out.read_text(encoding="utf-8"))
        assert doc.relabeling == seed_permutation(20, 5)
        assert relabel(doc.certificate.graph, invert_permutation(doc.relabeling)) == g
        assert doc.criticality.cr_value == 256 * 7 * 589825

        replayed = tmp_path / "replayed.json"
        assert main(["certify", "-i", str(out), "-o", str(replayed)]) == 0
        dot = tmp_path / "moved.dot"
        assert main(["export", "-i", str(out), "-o", str(dot), "--format", "dot"]) == 0
        assert _dot_edges(dot.read_text(encoding="utf-8").splitlines()) == set(g.edges)

    def test_seed_order_dot_in_input_ids(self, tmp_path, dodecahedron_instance):
        """Test that --seed-order with --format dot writes edges under the input's ids."""
        g, uv = dodecahedron_instance
        source = _write_graph(tmp_path / "g.json", g, uv)
        out = tmp_path / "moved.dot"
        assert main(["synthesize", "-i", source, "-o", str(out), "--seed-order", "5", "--format", "dot"]) == 0
        assert _dot_edges(out.read_text(encoding="utf-8").splitlines()) == set(g.edges)


class TestExport:
    """Test suite for the export command."""

    def test_certificate_to_dot(self, certificate_file, tmp_path):
        """Test that a certificate exports as DOT with omega labels."""
        out = tmp_path / "g.dot"
        assert main(["export", "-i", str(certificate_file), "-o", str(out), "--format", "dot"]) == 0
        assert '[label="256"]' in out.read_text(encoding="utf-8")

    def test_certificate_to_drawing(self, certificate_file, tmp_path):
        """Test that a certificate exports its upper-bound drawing with the crossing total."""
        out = tmp_path / "drawing.json"
        assert main(["export", "-i", str(certificate_file), "-o", str(out)]) == 0
        drawing = json.loads(out.read_text(encoding="utf-8"))
        assert drawing["crossings"] == str(256 * 7 * 589825)

    def test_weighted_graph_to_dot(self, tmp_path):
        """Test that a weighted graph document exports its weights as labels."""
        source = tmp_path / "triangle.json"
        document = {
            "version": 1,
            "n": 3,
            "edges": [[0, 1], [1, 2], [0, 2]],
            "weights": {"0-1": "1", "1-2": "3", "0-2": "2"},
        }
        source.write_text(json.dumps(document), encoding="utf-8")
        out = tmp_path / "triangle.dot"
        assert main(["export", "-i", str(source), "-o", str(out), "--format", "dot"]) == 0
        assert '  1 -- 2 [label="3"];' in out.read_text(encoding="utf-8")

    def test_multiplicities_expand(self, tmp_path):
        """Test that a multigraph document exports each parallel class as repeated edges."""
        source = tmp_path / "multi.json"
        document = {
            "version": 1,
            "n": 3,
            "edges": [[0, 1], [1, 2], [0, 2]],
            "multiplicities": {"0-1": "3", "1-2": "1", "0-2": "2"},
        }
        source.write_text(json.dumps(document), encoding="utf-8")
        out = tmp_path / "multi.dot"
        assert main(["export", "-i", str(source), "-o", str(out), "--format", "dot"]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines.count("  0 -- 1;") == 3
        assert lines.count("  0 -- 2;") == 2

    def test_invalid_utf8(self, tmp_path):
        """Test that input bytes that are not UTF-8 exit 4 like any other parse error."""
        source = tmp_path / "latin1.json"
        source.write_bytes(b'{"version": 1,\n "n": "\xff"}')
        assert main(["validate", "-i", str(source)]) == 4
        assert main(["export", "-i", str(source), "--format", "dot"]) == 4

    def test_malformed_document(self, tmp_path):
        """Test that invalid JSON exits 4."""
        source = tmp_path / "broken.json"
        source.write_text('{"n": 3,', encoding="utf-8")
        assert main(["export", "-i", str(source), "--format", "dot"]) == 4

    def test_missing_file(self, tmp_path):
        """Test that an unreadable input exits 4."""
        assert main(["export", "-i", str(tmp_path / "absent.json")]) == 4


def test_version(capsys):
    """Test that --version prints the tool version."""
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert VERSION in capsys.readouterr().out
