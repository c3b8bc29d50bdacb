import json
import socket
import subprocess
import sys
import time

import pytest

from podium import cli
from podium.package import load_file

MANUSCRIPT = """\
Welcome to this talk about coral reefs. Today we explore three ideas.
---
Reefs shelter thousands of marine species. Their loss would be irreversible.
"""


@pytest.fixture
def manuscript(tmp_path):
    path = tmp_path / "manuscript.txt"
    path.write_text(MANUSCRIPT, encoding="utf-8")
    return path


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


class TestPreprocess:
    def test_happy_path_with_preset(self, manuscript, tmp_path, capsys):
        out = tmp_path / "pkg.json"
        code = run_cli("preprocess", manuscript, "--preset", "--mock-llm", "--out", out)
        assert code == 0
        pkg = load_file(out)
        assert len(pkg.slides) == 2
        assert pkg.config.used_preset
        captured = capsys.readouterr()
        assert "kept" in captured.out

    def test_overload_warning_still_proceeds(self, manuscript, tmp_path, capsys):
        out = tmp_path / "pkg.json"
        code = run_cli(
            "preprocess", manuscript, "--mock-llm", "--out", out,
            "--factors", "volume,rate,gesture,eye,facial,composure",
        )
        assert code == 0
        assert "overload" in capsys.readouterr().err

    def test_missing_manuscript(self, tmp_path):
        assert run_cli("preprocess", tmp_path / "nope.txt", "--mock-llm") == 2

    def test_unknown_factor(self, manuscript):
        assert run_cli("preprocess", manuscript, "--mock-llm", "--factors", "tempo") == 2

    def test_slides_manifest(self, manuscript, tmp_path):
        manifest = tmp_path / "slides.json"
        manifest.write_text(
            json.dumps(
                [
                    {"thumbnail_ref": "deck/1.png", "visual_notes": "title slide"},
                    {"thumbnail_ref": "deck/2.png"},
                ]
            )
        )
        out = tmp_path / "pkg.json"
        code = run_cli(
            "preprocess", manuscript, "--mock-llm", "--out", out, "--slides", manifest
        )
        assert code == 0
        pkg = load_file(out)
        assert pkg.slides[0].thumbnail_ref == "deck/1.png"
        assert pkg.slides[0].visual_notes == "title slide"

    def test_syllable_markers_resolved(self, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("We proceed {Subsequently} to the answer.\n")
        out = tmp_path / "pkg.json"
        assert run_cli("preprocess", src, "--mock-llm", "--out", out) == 0
        pkg = load_file(out)
        assert pkg.slides[0].sentences[0].syllabified == {2: "Sub-se-quent-ly"}


@pytest.fixture
def built_package(manuscript, tmp_path):
    out = tmp_path / "pkg.json"
    assert run_cli("preprocess", manuscript, "--mock-llm", "--out", out) == 0
    return out


class TestReplay:
    def test_perfect_transcript_reaches_last_sentence(self, built_package, tmp_path):
        pkg = load_file(built_package)
        lines = []
        t = 0
        for s in pkg.all_sentences():
            t += 2000
            lines.append(f"{t}\t{' '.join(s.tokens)}")
        transcript = tmp_path / "t.tsv"
        transcript.write_text("\n".join(lines) + "\n")
        trace = tmp_path / "trace.tsv"
        assert run_cli("replay", built_package, transcript, "--out", trace) == 0
        rows = [line.split("\t") for line in trace.read_text().splitlines()]
        assert len(rows) == len(lines)
        assert int(rows[-1][1]) == len(pkg.all_sentences()) - 1

    def test_noise_only_stays_at_zero(self, built_package, tmp_path):
        transcript = tmp_path / "t.tsv"
        transcript.write_text("1000\tzzz qqq xxx\n2000\tvvv kkk jjj\n")
        trace = tmp_path / "trace.tsv"
        assert run_cli("replay", built_package, transcript, "--out", trace) == 0
        for line in trace.read_text().splitlines():
            assert line.split("\t")[1] == "0"

    def test_malformed_transcript_line(self, built_package, tmp_path):
        transcript = tmp_path / "t.tsv"
        transcript.write_text("not-a-number\thello\n")
        assert run_cli("replay", built_package, transcript) == 6

    def test_invalid_package(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        transcript = tmp_path / "t.tsv"
        transcript.write_text("1000\thello\n")
        assert run_cli("replay", bad, transcript) == 4


class TestSimulate:
    def _events(self, tmp_path, lines):
        path = tmp_path / "events.tsv"
        path.write_text("\n".join(lines) + "\n")
        return path

    def test_swipe_past_last_slide_clamped(self, built_package, tmp_path, capsys):
        events = self._events(
            tmp_path, [f"{i * 100}\tswipe\tnext" for i in range(1, 8)]
        )
        assert run_cli("simulate", built_package, events) == 0
        assert "PASS" in capsys.readouterr().out

    def test_duplicate_taps_click_once_each(self, built_package, tmp_path, capsys):
        events = self._events(
            tmp_path,
            ["100\ttap", "150\tdup\tlast", "200\ttap", "250\tdup\tlast", "300\tdup\tlast"],
        )
        assert run_cli("simulate", built_package, events) == 0
        out = capsys.readouterr().out
        assert "taps=2 clicks=2" in out
        assert "PASS" in out

    def test_reconnect_flow(self, built_package, tmp_path, capsys):
        pkg = load_file(built_package)
        tokens = [" ".join(s.tokens) for s in pkg.all_sentences()]
        lines = [
            "100\ttap",
            f"200\ttranscript\t{tokens[0]}",
            "300\tdisconnect\tresponder",
            "400\tswipe\tnext",
            f"500\ttranscript\t{tokens[1]}",
            "600\treconnect\tresponder",
            "700\ttap",
        ]
        assert run_cli("simulate", built_package, self._events(tmp_path, lines)) == 0
        assert "PASS" in capsys.readouterr().out


class TestServe:
    def test_port_in_use_exits_5(self):
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", 0))
        port = blocker.getsockname()[1]
        try:
            assert run_cli("serve", "--port", port) == 5
        finally:
            blocker.close()

    def test_start_and_interrupt_exits_0(self):
        proc = subprocess.Popen(
            [sys.executable, "-m", "podium.cli", "serve", "--port", "7398"],
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        try:
            deadline = time.time() + 5
            while time.time() < deadline:
                try:
                    socket.create_connection(("127.0.0.1", 7398), timeout=0.2).close()
                    break
                except OSError:
                    time.sleep(0.05)
            else:
                pytest.fail("server did not come up")
        finally:
            import signal

            proc.send_signal(signal.SIGINT)
            assert proc.wait(timeout=5) == 0
