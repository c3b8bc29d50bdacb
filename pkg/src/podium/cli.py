"""Operator entry points.

preprocess: manuscript -> validated script package (mock or live polish)
serve:      run the session server over TCP
replay:     feed a transcript file through alignment + pacing, write a trace
simulate:   headless server + controller + responder convergence run
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

from . import alignment, pacing, polish
from .errors import EngineError
from .factors import DeliveryConfig, Factor, check_factor_overload
from .markup import parse_annotated
from .package import (
    PackageError,
    ScriptPackage,
    SlideEntry,
    load_file,
    save_file,
)
from .session import server as session_server
from .session.server import ControllerClient, LoopbackServer, ResponderClient, converged

EXIT_OK = 0
EXIT_BAD_FLAGS = 2
EXIT_POLISH_FAILED = 3
EXIT_BAD_PACKAGE = 4
EXIT_BIND_FAILED = 5
EXIT_BAD_TRANSCRIPT = 6
EXIT_DIVERGED = 7

FACTOR_CLI_NAMES = {
    "pitch": Factor.VOCAL_PITCH,
    "rate": Factor.SPEECH_RATE,
    "volume": Factor.VOLUME,
    "eye": Factor.EYE_CONTACT,
    "facial": Factor.FACIAL_EXPRESSION,
    "composure": Factor.COMPOSURE,
    "gesture": Factor.GESTURE,
    "posture": Factor.POSTURE,
    "slides": Factor.SLIDES,
}

SLIDE_SEPARATOR = "---"


def _split_manuscript(text: str) -> list[str]:
    slides, current = [], []
    for line in text.splitlines():
        if line.strip() == SLIDE_SEPARATOR:
            slides.append("\n".join(current))
            current = []
        else:
            current.append(line)
    slides.append("\n".join(current))
    return [s for s in (s.strip() for s in slides) if s]


def _parse_factors(spec_text: str) -> frozenset:
    factors = set()
    for name in spec_text.split(","):
        name = name.strip().lower()
        if not name:
            continue
        if name not in FACTOR_CLI_NAMES:
            raise ValueError(f"unknown factor {name!r}; valid: {', '.join(FACTOR_CLI_NAMES)}")
        factors.add(FACTOR_CLI_NAMES[name])
    return frozenset(factors)


def cmd_preprocess(args) -> int:
    try:
        with open(args.manuscript, encoding="utf-8") as fh:
            manuscript_text = fh.read()
    except OSError as exc:
        print(f"error: cannot read manuscript: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS

    try:
        if args.preset:
            config = DeliveryConfig.preset()
        else:
            config = DeliveryConfig(selected_factors=_parse_factors(args.factors or ""))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS

    warning = check_factor_overload(config)
    if warning:
        print(f"warning: {warning}", file=sys.stderr)

    slides_text = _split_manuscript(manuscript_text)
    if not slides_text:
        print("error: manuscript is empty", file=sys.stderr)
        return EXIT_BAD_FLAGS

    try:
        request = polish.PolishRequest(
            manuscript=tuple(slides_text),
            selected_factors=config.selected_factors,
            time_limit_s=args.time_limit,
        )
        adapter = polish.MockAdapter() if args.mock_llm else polish.HttpAdapter()
        result = polish.polish(request, adapter)
    except (polish.AdapterUnavailable, polish.UnparsableResponse, EngineError, ValueError) as exc:
        print(f"error: polish failed: {exc}", file=sys.stderr)
        return EXIT_POLISH_FAILED

    for entry in polish.diff_scripts(request.manuscript, result.polished):
        print(f"slide {entry.slide} sentence {entry.index}: {entry.op}")

    manifest = []
    if args.slides:
        try:
            with open(args.slides, encoding="utf-8") as fh:
                manifest = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read slides manifest: {exc}", file=sys.stderr)
            return EXIT_BAD_FLAGS

    try:
        slides = []
        for i, slide_text in enumerate(result.polished):
            meta = manifest[i] if i < len(manifest) else {}
            slides.append(
                SlideEntry(
                    slide_index=i,
                    thumbnail_ref=meta.get("thumbnail_ref", f"slide-{i}"),
                    sentences=tuple(parse_annotated(slide_text)),
                    visual_notes=meta.get("visual_notes", ""),
                )
            )
        package = ScriptPackage(
            slides=tuple(slides),
            config=config,
            time_limit_s=args.time_limit,
            target_wpm=args.wpm,
        )
    except EngineError as exc:
        print(f"error: package validation failed: {exc}", file=sys.stderr)
        return EXIT_BAD_PACKAGE

    estimate = polish.estimate_duration(package, package.target_wpm)
    print(f"estimated duration: {estimate} s (limit {package.time_limit_s:g} s)", file=sys.stderr)

    try:
        save_file(package, args.out)
    except OSError as exc:
        print(f"error: cannot write package: {exc}", file=sys.stderr)
        return EXIT_BAD_PACKAGE
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_serve(args) -> int:
    try:
        asyncio.run(
            session_server.run_tcp_server(host=args.host, port=args.port)
        )
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_BIND_FAILED
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def _read_transcript(path):
    events = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                t_part, text = line.rstrip("\n").split("\t", 1)
                t_ms = int(t_part)
            except ValueError:
                raise ValueError(f"malformed transcript line {lineno}: {line.rstrip()!r}")
            if events and t_ms < events[-1].t_ms:
                raise ValueError(f"timestamps go backwards at line {lineno}")
            events.append(alignment.TranscriptEvent(t_ms=t_ms, text=text))
    return events


def cmd_replay(args) -> int:
    try:
        package = load_file(args.package)
    except (PackageError, OSError) as exc:
        print(f"error: invalid package: {exc}", file=sys.stderr)
        return EXIT_BAD_PACKAGE
    try:
        events = _read_transcript(args.transcript)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_TRANSCRIPT

    pace_cfg = pacing.PaceConfig.for_package(package)
    if args.time_limit:
        pace_cfg = pacing.PaceConfig(
            time_limit_s=args.time_limit, target_wpm=package.target_wpm
        )
    sentences = package.sentence_tokens()
    cfg = alignment.AlignmentConfig()
    index = alignment.Bm25Index(sentences, k1=cfg.k1, b=cfg.b)
    state = alignment.AlignmentState()

    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    try:
        for event in events:
            state = alignment.ingest(state, event, sentences, index, cfg)
            report = pacing.compute_pace(state, event.t_ms / 1000.0, package, pace_cfg)
            out.write(
                f"{event.t_ms}\t{state.sentence_index}\t{state.confidence:.6f}\t"
                f"{report.pace_class.value}\t{report.actual_fraction:.6f}\t"
                f"{report.ideal_fraction:.6f}\n"
            )
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _read_events(path):
    events = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            try:
                t_ms = int(parts[0])
                action = parts[1]
                arg = parts[2] if len(parts) > 2 else ""
            except (IndexError, ValueError):
                raise ValueError(f"malformed event line {lineno}: {line!r}")
            events.append((t_ms, action, arg))
    return events


def cmd_simulate(args) -> int:
    try:
        package = load_file(args.package)
    except (PackageError, OSError) as exc:
        print(f"error: invalid package: {exc}", file=sys.stderr)
        return EXIT_BAD_PACKAGE
    try:
        events = _read_events(args.events)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS

    server = LoopbackServer()
    session_id = "simulate"
    controller = ControllerClient(server, session_id)
    responder = ResponderClient(server, session_id)
    controller.connect()
    responder.connect()
    controller.upload_package(package)

    taps = 0
    last_sent = None
    for t_ms, action, arg in events:
        if action == "transcript":
            last_sent = controller.transcript(t_ms, arg)
        elif action == "tap":
            last_sent = controller.tap()
            taps += 1
        elif action == "swipe":
            last_sent = controller.swipe(arg or "next")
        elif action == "goto":
            last_sent = controller.goto_slide(int(arg))
        elif action == "scroll":
            last_sent = controller.manual_scroll(int(arg))
        elif action == "dup":
            if last_sent is not None:
                controller.redeliver(last_sent)
        elif action == "disconnect":
            (controller if arg != "responder" else responder).disconnect()
        elif action == "reconnect":
            (controller if arg != "responder" else responder).reconnect()
        else:
            print(f"error: unknown simulate action {action!r}", file=sys.stderr)
            return EXIT_BAD_FLAGS

    # quiesce: both endpoints online and caught up via snapshot
    for client in (controller, responder):
        if not client.connected:
            client.reconnect()
        else:
            client.send(session_server.Kind.SNAPSHOT_REQUEST)

    session = server.session(session_id)
    ok = converged(server, session_id, controller, responder)
    clicks_ok = len(responder.click_log) == taps == session.click_count
    for name, view in (("controller", controller.view), ("responder", responder.view)):
        print(
            f"{name}: slide={view.slide_index} sentence={view.sentence_index} "
            f"elapsed={view.elapsed_s:g}"
        )
    print(
        f"server: slide={session.slide_index} "
        f"sentence={session.align_state.sentence_index} elapsed={session.elapsed_s:g}"
    )
    print(f"taps={taps} clicks={len(responder.click_log)}")
    verdict = ok and clicks_ok
    print("PASS" if verdict else "FAIL")
    return EXIT_OK if verdict else EXIT_DIVERGED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="podium", description="Presentation delivery support engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="build a script package from a manuscript")
    p.add_argument("manuscript", help="manuscript file; slides separated by '---' lines")
    p.add_argument("--factors", default="", help="comma list: " + ",".join(FACTOR_CLI_NAMES))
    p.add_argument("--preset", action="store_true", help="use the recommended factor preset")
    p.add_argument("--time-limit", type=float, default=300.0, help="presentation time limit (s)")
    p.add_argument("--wpm", type=float, default=130.0, help="target words per minute")
    p.add_argument("--slides", default="", help="optional slides manifest (JSON)")
    p.add_argument("--out", default="package.json", help="output package path")
    p.add_argument("--mock-llm", action="store_true", help="use the offline mock adapter")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("serve", help="run the session server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=session_server.DEFAULT_PORT)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("replay", help="replay a transcript against a package")
    p.add_argument("package")
    p.add_argument("transcript", help="lines of t_ms<TAB>text")
    p.add_argument("--time-limit", type=float, default=0.0, help="override time limit (s)")
    p.add_argument("--out", default="-", help="trace output path ('-' for stdout)")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("simulate", help="headless controller/responder convergence run")
    p.add_argument("package")
    p.add_argument("events", help="lines of t_ms<TAB>action[<TAB>arg]")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
