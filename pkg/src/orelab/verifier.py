"""Corpus-wide verification runner, reports, and the Question B search.

A verification sweep evaluates one registered statement on every corpus
group, instance by instance, recording hypothesis-true counts, skipped
instances (TooLarge or time budget), and counterexamples.  Counterexample
records carry their full instance parameters and replay deterministically.

Reports serialize to a versioned JSON schema that is byte-stable across
reruns except for the isolated timings section.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field, asdict
from typing import Iterable, Optional

from .corpus import CorpusEntry, build, generate_corpus, with_cached_lattice
from .errors import EmptyCorpus, TooLarge, UnknownId
from . import functors as ft
from .statements import Env, PAPER_SUITE, REGISTRY, get_statement
from .structure import get_lattice

REPORT_SCHEMA = "orelab-report/1"


@dataclass
class GroupOutcome:
    """Per-(statement, group) result; all fields JSON-able primitives."""

    statement: str
    group_spec: str
    order: int
    status: str  # holds | vacuous | counterexample | skipped
    hyp_true: int = 0
    instances: int = 0
    capped: bool = False
    counterexamples: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    ms: float = 0.0


@dataclass
class VerificationReport:
    statement: str
    corpus_count: int
    max_order: int
    outcomes: list  # of GroupOutcome
    params: dict = field(default_factory=dict)

    @property
    def counterexamples(self) -> list:
        out = []
        for o in self.outcomes:
            out.extend(o.counterexamples)
        return out

    @property
    def hyp_true_total(self) -> int:
        return sum(o.hyp_true for o in self.outcomes)

    @property
    def status(self) -> str:
        """PASS / WEAK / FAIL for the whole suite."""
        if any(o.status == "counterexample" for o in self.outcomes):
            return "FAIL"
        if self.hyp_true_total == 0:
            return "WEAK"
        return "PASS"


def run_statement_on_group(stmt, entry: CorpusEntry, env: Env) -> GroupOutcome:
    t0 = time.monotonic()
    out = GroupOutcome(stmt.id, str(entry.spec), entry.group.order, "vacuous")
    try:
        gen = stmt.instances(entry, env)
        for params in gen:
            if out.instances >= env.instance_cap:
                out.capped = True
                break
            if out.instances % 64 == 0 and time.monotonic() - t0 > env.time_budget_s:
                out.skipped.append({"reason": f"time budget {env.time_budget_s}s exhausted"})
                out.capped = True
                break
            out.instances += 1
            try:
                hyp, concl = stmt.evaluate(entry, env, params)
            except TooLarge as exc:
                out.skipped.append({"reason": str(exc), "params": params})
                continue
            if hyp:
                out.hyp_true += 1
                if not concl:
                    if len(out.counterexamples) < 16:
                        out.counterexamples.append(
                            {"statement": stmt.id, "group_spec": str(entry.spec), "params": params}
                        )
    except TooLarge as exc:
        out.status = "skipped"
        out.skipped.append({"reason": str(exc)})
        out.ms = 1000 * (time.monotonic() - t0)
        return out
    if out.counterexamples:
        out.status = "counterexample"
    elif out.hyp_true > 0:
        out.status = "holds"
    else:
        out.status = "vacuous"
    out.ms = 1000 * (time.monotonic() - t0)
    return out


def crosscheck_classifications(
    corpus: list, env: Env, needed: Optional[set] = None, max_order: int = 48
) -> dict:
    """Verify the paper-asserted functor classifications a sweep relies on.

    A contradiction with a paper-asserted property is a build-failing event:
    AssertionError is raised, since every registered hypothesis discharge
    depends on these classifications.
    """
    from .statements import required_classifications

    needed = needed or required_classifications(env)
    small = [e for e in corpus if e.group.order <= max_order]
    results = {}
    for tau_id, prop in sorted(needed):
        tau = ft.FUNCTORS[tau_id]
        res = ft.check_property(tau, prop, small, ccp_max_order=env.ccp_max_order)
        results[(tau_id, prop)] = res.is_pass
        assert res.is_pass, (
            f"paper-asserted classification violated: {tau_id} is not {prop}: "
            f"{res.witness.describe()}"
        )
    return results


def verify(
    statement_id: str,
    corpus: Iterable[CorpusEntry],
    env: Optional[Env] = None,
    max_order: Optional[int] = None,
) -> VerificationReport:
    """Evaluate one registered statement over the corpus."""
    env = env or Env()
    stmt = get_statement(statement_id)
    entries = [e for e in corpus if max_order is None or e.group.order <= max_order]
    if not entries:
        raise EmptyCorpus(f"no corpus groups for {statement_id}")
    entries = sorted(entries, key=lambda e: (e.group.order, str(e.spec)))
    outcomes = [run_statement_on_group(stmt, e, env) for e in entries]
    return VerificationReport(
        statement_id,
        len(entries),
        max(e.group.order for e in entries),
        outcomes,
        params=env.to_dict(),
    )


def replay_counterexample(record: dict, corpus: Optional[list] = None) -> dict:
    """Re-evaluate a recorded counterexample; field-for-field reproducible."""
    stmt = get_statement(record["statement"])
    entry = None
    if corpus:
        for e in corpus:
            if str(e.spec) == record["group_spec"]:
                entry = e
                break
    if entry is None:
        from .corpus import parse_spec

        spec = parse_spec(record["group_spec"])
        entry = CorpusEntry(spec, build(spec))
    hyp, concl = stmt.evaluate(entry, Env(), record["params"])
    return {"hypothesis": bool(hyp), "conclusion": bool(concl)}


def search_question_b(corpus: Iterable[CorpusEntry], env: Optional[Env] = None) -> VerificationReport:
    """Corpus-bounded regularity search for the completely-c-permutable functor.

    A witness would answer the open question negatively and is flagged as a
    counterexample outcome.
    """
    return verify("QB", corpus, env=env)


# ---------------------------------------------------------------------------
# suite orchestration (with optional worker pool)

_WORKER_STATE: dict = {}


def _worker_init(env_dict: dict, cache_dir: Optional[str]):
    _WORKER_STATE["env"] = Env.from_dict(env_dict)
    _WORKER_STATE["cache_dir"] = cache_dir
    _WORKER_STATE["entries"] = {}


def _worker_run(task) -> dict:
    spec_str, stmt_ids = task
    env = _WORKER_STATE["env"]
    cache_dir = _WORKER_STATE["cache_dir"]
    entry = _WORKER_STATE["entries"].get(spec_str)
    if entry is None:
        from .corpus import parse_spec

        spec = parse_spec(spec_str)
        entry = CorpusEntry(spec, build(spec))
        if cache_dir:
            with_cached_lattice(entry.group, cache_dir)
        if len(_WORKER_STATE["entries"]) > 8:
            _WORKER_STATE["entries"].clear()
        _WORKER_STATE["entries"][spec_str] = entry
    outs = []
    for sid in stmt_ids:
        outs.append(asdict(run_statement_on_group(get_statement(sid), entry, env)))
    return {"spec": spec_str, "outcomes": outs}


def verify_suites(
    statement_ids: list[str],
    corpus: list[CorpusEntry],
    env: Optional[Env] = None,
    jobs: int = 1,
    cache_dir: Optional[str] = None,
    crosscheck: bool = False,
) -> list[VerificationReport]:
    """Run several statements, optionally fanning out per group over a pool.

    Results are merged deterministically by (statement id, group spec)
    regardless of worker scheduling.
    """
    env = env or Env()
    for sid in statement_ids:
        get_statement(sid)  # fail fast on unknown ids
    entries = sorted(corpus, key=lambda e: (e.group.order, str(e.spec)))
    if not entries:
        raise EmptyCorpus("empty corpus")
    if crosscheck:
        crosscheck_classifications(entries, env)
    if jobs <= 1:
        reports = []
        for sid in statement_ids:
            reports.append(verify(sid, entries, env=env))
        return reports
    import multiprocessing as mp

    tasks = [(str(e.spec), tuple(statement_ids)) for e in entries]
    ctx = mp.get_context("fork")
    with ctx.Pool(jobs, initializer=_worker_init, initargs=(env.to_dict(), cache_dir)) as pool:
        raw = pool.map(_worker_run, tasks, chunksize=1)
    by_spec = {r["spec"]: r["outcomes"] for r in raw}
    reports = []
    for sid in statement_ids:
        outcomes = []
        for e in entries:
            for od in by_spec[str(e.spec)]:
                if od["statement"] == sid:
                    outcomes.append(GroupOutcome(**od))
        reports.append(
            VerificationReport(
                sid, len(entries), max(e.group.order for e in entries), outcomes, env.to_dict()
            )
        )
    return reports


# ---------------------------------------------------------------------------
# report emission


def _family_breakdown(corpus: list[CorpusEntry]) -> dict:
    out: dict[str, int] = {}
    for e in corpus:
        out[e.spec.kind] = out.get(e.spec.kind, 0) + 1
    return dict(sorted(out.items()))


def report_payload(reports: list[VerificationReport], corpus: Optional[list] = None) -> dict:
    results = []
    timings = {}
    for rep in reports:
        for o in sorted(rep.outcomes, key=lambda o: (o.statement, o.group_spec)):
            row = {
                "id": o.statement,
                "group_spec": o.group_spec,
                "order": o.order,
                "status": o.status,
                "hyp_true": o.hyp_true,
                "instances": o.instances,
            }
            if o.capped:
                row["capped"] = True
            if o.counterexamples:
                row["witness"] = o.counterexamples[0]
                row["counterexamples"] = o.counterexamples
            if o.skipped:
                row["skipped"] = o.skipped
            results.append(row)
            timings[f"{o.statement}::{o.group_spec}"] = round(o.ms, 3)
    results.sort(key=lambda r: (r["id"], r["group_spec"]))
    suites = {
        rep.statement: {"status": rep.status, "hyp_true": rep.hyp_true_total}
        for rep in reports
    }
    payload = {
        "schema": REPORT_SCHEMA,
        "suite": sorted(suites),
        "suite_status": dict(sorted(suites.items())),
        "corpus": {
            "count": reports[0].corpus_count if reports else 0,
            "max_order": max((r.max_order for r in reports), default=0),
            "family_breakdown": _family_breakdown(corpus) if corpus else {},
        },
        "results": results,
        "timings_ms": timings,
    }
    return payload


def emit_report(
    reports: list[VerificationReport],
    path: str,
    format: str = "json",
    corpus: Optional[list] = None,
) -> str:
    """Write the versioned report; JSON is byte-stable apart from timings."""
    payload = report_payload(reports, corpus)
    if format == "json":
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    elif format == "text":
        lines = []
        for sid, s in payload["suite_status"].items():
            lines.append(f"suite {sid}: {s['status']} (hypothesis-true instances: {s['hyp_true']})")
        for row in payload["results"]:
            if row["status"] == "vacuous":
                continue
            extra = " CAPPED" if row.get("capped") else ""
            lines.append(
                f"{row['id']}  {row['group_spec']}  {row['status']}"
                f"  hyp_true={row['hyp_true']} instances={row['instances']}{extra}"
            )
        text = "\n".join(lines) + "\n"
    else:
        raise UnknownId(f"unknown report format {format!r}")
    from .corpus import _atomic_write_text

    _atomic_write_text(path, text)
    return path


def strip_timings(payload_text: str) -> str:
    """Drop the timings section for byte-stability comparisons."""
    data = json.loads(payload_text)
    data.pop("timings_ms", None)
    return json.dumps(data, sort_keys=True, indent=1) + "\n"
