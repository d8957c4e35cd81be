"""Scripted end-to-end checks of the N=2, 3, 4 inner-bound constructions.

Each scenario is a list of steps; a step returns ``(ok, summary)`` and the
summary carries enough of the certificate to recheck the claim by hand.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import cone as cn
from .coarse import build_delta, parse_map, pullback, tensor_pad
from .hypergraph import entropy_vector, fixture
from .ineq import family_instances, sa_instances
from .states import ame4, all_bells, erq4_trivial_rays, ghz

SCHEMA_VERSION = 1

N6_TO_N3 = "0,1,1,2,2,3,3"
N4_MAPS = {
    "fig1": "0,1,1,2,2,3,4",
    "fig2": "0,1,1,2,2,3,3,4,4,0",
    "fig3": "0,1,1,2,2,3,3,4,4",
}
PADDED_FIG1_TO_N4 = "0,1,1,2,2,3,3,4"


@dataclass
class Step:
    description: str
    verdict: str  # "pass", "fail" or "skipped"
    certificate: str
    wall_time: float = 0.0


@dataclass
class RunReport:
    scenario: str
    steps: list[Step] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def overall(self) -> str:
        return "fail" if any(s.verdict == "fail" for s in self.steps) else "pass"

    def to_json(self, timings: bool = True) -> str:
        d = asdict(self)
        d["overall"] = self.overall
        if not timings:
            for s in d["steps"]:
                s["wall_time"] = None
        return json.dumps(d, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        steps = [Step(**s) for s in d["steps"]]
        report = cls(d["scenario"], steps, d["schema_version"])
        if d.get("overall") not in (None, report.overall):
            raise ValueError("report 'overall' field disagrees with its steps")
        return report

    def to_text(self, timings: bool = False) -> str:
        lines = [f"scenario {self.scenario}"]
        for i, s in enumerate(self.steps, start=1):
            t = f" [{s.wall_time:.2f}s]" if timings else ""
            lines.append(f"{i:2d}. {s.verdict.upper():7s} {s.description}{t}")
            for ln in s.certificate.splitlines():
                lines.append(f"      {ln}")
        lines.append(f"overall {self.overall}")
        return "\n".join(lines) + "\n"


class _Runner:
    def __init__(self, name: str):
        self.report = RunReport(name)
        self.cache: dict = {}

    def step(self, description: str, fn: Callable[[], tuple[bool, str]]) -> bool:
        t0 = time.perf_counter()
        try:
            ok, cert = fn()
        except Exception as exc:  # a crashing step is a failed step, not a crashed run
            ok, cert = False, f"error: {type(exc).__name__}: {exc}"
        self.report.steps.append(
            Step(description, "pass" if ok else "fail", cert, time.perf_counter() - t0)
        )
        return ok

    def skip(self, description: str, reason: str) -> None:
        self.report.steps.append(Step(description, "skipped", reason, 0.0))


def _fmt_rays(rays) -> str:
    return "; ".join("(" + ",".join(map(str, r)) + ")" for r in rays)


def _extreme_summary(c: cn.ExtremalityCertificate) -> str:
    return (
        f"verdict={c.verdict} rank={c.rank} D={c.D} saturated={len(c.saturated)} "
        f"violated={len(c.violated)}"
    )


def _hull_summary(certs) -> str:
    members = sum(c.member for c in certs)
    lp = sum(1 for c in certs if c.member and c.pivots)
    return f"{members}/{len(certs)} rays certified members ({lp} by simplex)"


def run_n2(threads: int = 1, long: bool = False) -> RunReport:
    run = _Runner("n2")
    bells = cn.VRepCone.of_vectors(all_bells(2))

    def sac2():
        V = cn.double_description(cn.HRepCone.of(family_instances("sa", 2)))
        run.cache["sac2"] = V
        return V.rays == bells.rays, f"rays {_fmt_rays(V.rays)}"

    def poly2():
        V = cn.double_description(cn.HRepCone.of(family_instances("poly", 2)))
        return V.rays == bells.rays, f"rays {_fmt_rays(V.rays)}"

    def delta22():
        D22 = build_delta(bells, 2)
        ok = cn.equal(D22, run.cache["sac2"], threads)
        return ok, f"{len(D22)} generators; hull equals SAC_2 = poly_2: {ok}"

    run.step("SAC_2 extreme rays are the three Bell pairs", sac2)
    run.step("poly_2 has the same extreme rays", poly2)
    run.step("Delta_2^2 (coarse grainings of Bell rays) equals poly_2", delta22)
    return run.report


def run_n3_chain(threads: int = 1, long: bool = False) -> RunReport:
    run = _Runner("n3-chain")
    bells = all_bells(3)
    ame = ame4()
    ghz3 = ghz(range(4), 3)
    sac3 = cn.HRepCone.of(sa_instances(3))
    poly3_h = cn.HRepCone.of(family_instances("poly", 3))

    def enumerate_cones():
        P = cn.double_description(poly3_h)
        S = cn.double_description(sac3)
        run.cache["poly3"] = P
        expected = cn.VRepCone.of_vectors(bells + [ghz3, ame])
        ok = P.rays == expected.rays and cn.orbit_count(P) == 3
        return ok, (
            f"poly_3: {len(P)} rays in {cn.orbit_count(P)} orbits (Bell x6, GHZ, AME4); "
            f"SAC_3: {len(S)} rays in {cn.orbit_count(S)} orbits"
        )

    def sac3_verdicts():
        lines, ok = [], True
        for name, v in [(f"Bell{i}", b) for i, b in enumerate(bells)] + [("AME4", ame)]:
            c = cn.is_extreme_ray(v, sac3)
            ok &= c.extreme
            lines.append(f"{name}: {_extreme_summary(c)}")
        c = cn.is_extreme_ray(ghz3, sac3)
        ok &= c.verdict == "not-extreme" and not c.saturated
        lines.append(f"GHZ: {_extreme_summary(c)}")
        return ok, "\n".join(lines)

    def fig1_extreme():
        v = entropy_vector(fixture("fig1"))
        run.cache["fig1"] = v
        c = cn.is_extreme_ray(v, cn.HRepCone.of(sa_instances(6)))
        return c.extreme and c.rank == 62, _extreme_summary(c)

    def fig1_ghz():
        w = pullback(parse_map(N6_TO_N3), run.cache["fig1"])
        run.cache["ghz_from_fig1"] = w
        ok = cn.ray_of(w) == cn.ray_of(ghz3)
        return ok, f"pullback {w} is {w.comp[0]} x GHZ"

    def endpoint():
        G = cn.VRepCone.of_vectors(bells + [ame, run.cache["ghz_from_fig1"]])
        P = run.cache["poly3"]
        ab, c1 = cn.hull_contains(G, P, threads)
        ba, c2 = cn.hull_contains(P, G, threads)
        return ab and ba, f"generators in poly_3: {_hull_summary(c1)}; poly_3 in generators: {_hull_summary(c2)}"

    def strict_d33():
        D33 = cn.VRepCone.of_vectors(bells + [ame])
        rel, wit = cn.compare(D33, run.cache["poly3"], threads)
        unc = wit["B_not_in_A"]
        ok = rel == "A<B" and [r for r, _ in unc] == [cn.ray_of(ghz3)]
        sep = unc[0][1].separating if unc else None
        return ok, f"relation {rel}; uncovered {_fmt_rays(r for r, _ in unc)}; separating functional {sep}"

    def delta36():
        sac6 = cn.HRepCone.of(sa_instances(6))
        padded = [tensor_pad(b, 6) for b in bells] + [tensor_pad(ame, 6)]
        cands = padded + [run.cache["fig1"]]
        bad = [i for i, v in enumerate(cands) if not cn.is_extreme_ray(v, sac6).extreme]
        D36 = build_delta(cn.VRepCone.of_vectors(cands), 3)
        inside, _ = cn.contains(D36, poly3_h)
        ok = not bad and inside and cn.hull_contains(run.cache["poly3"], D36, threads)[0]
        return ok, f"{len(cands)} certified SAC_6 rays -> {len(D36)} generators; hull equals poly_3: {ok}"

    run.step("enumerate poly_3 and SAC_3", enumerate_cones)
    run.step("Bell and AME4 rays are SAC_3-extreme, GHZ is not", sac3_verdicts)
    run.step("fig1 entropy vector is SAC_6-extreme", fig1_extreme)
    run.step("fig1 coarse grained by 0,1,1,2,2,3,3 lies on the GHZ ray", fig1_ghz)
    run.step("hull{Bells, AME4, GHZ from fig1} equals poly_3", endpoint)
    run.step("Delta_3^3 = hull{Bells, AME4} is strictly inside poly_3", strict_d33)
    run.step("all coarse grainings of padded Bells, AME4 and fig1 span poly_3", delta36)
    return run.report


def run_n4_lambda(threads: int = 1, long: bool = False) -> RunReport:
    run = _Runner("n4-lambda")
    lam_h = cn.HRepCone.of(family_instances("lambda4", 4))

    def lambda_rays():
        V = cn.double_description(lam_h)
        run.cache["lam"] = V
        k = cn.orbit_count(V)
        return k == 7, f"{len(V)} extreme rays in {k} orbits, sizes {[len(o) for o in cn.orbits(V)]}"

    def trivial():
        T = erq4_trivial_rays(run.cache["lam"])
        run.cache["trivial"] = T
        k = cn.orbit_count(T)
        reps = [o[0] for o in cn.orbits(T)]
        return k == 4, f"{len(T)} SAC_4-extreme rays in {k} orbits; representatives {_fmt_rays(reps)}"

    def fixture_extreme(name):
        def go():
            H = fixture(name)
            v = entropy_vector(H)
            run.cache[name] = v
            c = cn.is_extreme_ray(v, cn.HRepCone.of(sa_instances(H.n)))
            return c.extreme and c.rank == c.D - 1, _extreme_summary(c)

        return go

    def images():
        out, lines, ok = [], [], True
        lam_orbits = cn.orbits(run.cache["lam"])
        trivial = set(run.cache.get("trivial", cn.VRepCone(4, ())).rays)
        hit = set()
        for name, m in N4_MAPS.items():
            v = run.cache.get(name) or entropy_vector(fixture(name))
            w = pullback(parse_map(m), v)
            c = cn.is_extreme_ray(w, lam_h)
            r = cn.ray_of(w)
            gid = next(i for i, o in enumerate(lam_orbits) if cn.orbit_representative(r, 4) in o)
            hit.add(gid)
            ok &= c.extreme and not set(lam_orbits[gid]) & trivial
            out.append(w)
            lines.append(f"{name} via {m}: ray {r} -> {c.verdict} (rank {c.rank}), orbit #{gid + 1}")
        run.cache["images"] = out
        ok &= len(hit) == 3
        return ok, "\n".join(lines)

    def hull_equal(extra=()):
        def go():
            gens = run.cache["trivial"] | cn.VRepCone.of_vectors(run.cache["images"] + list(extra))
            G = cn.orbit_expand(gens)
            L = run.cache["lam"]
            rel, wit = cn.compare(G, L, threads)
            unc = [r for r, _ in wit["B_not_in_A"]]
            missing = cn.orbits(cn.VRepCone(4, tuple(unc))) if unc else []
            msg = f"{len(G)} generators vs {len(L)} Lambda_4 rays: {rel}"
            if missing:
                msg += f"; uncovered orbits {_fmt_rays(o[0] for o in missing)}"
            return rel == "equal", msg

        return go

    def padded_fig1():
        v = run.cache.get("fig1") or entropy_vector(fixture("fig1"))
        p = tensor_pad(v, 7)
        c = cn.is_extreme_ray(p, cn.HRepCone.of(sa_instances(7)))
        w = pullback(parse_map(PADDED_FIG1_TO_N4), p)
        run.cache["padded_image"] = w
        e = cn.is_extreme_ray(w, lam_h)
        ok = c.extreme and e.extreme
        return ok, f"fig1 x |0>: {_extreme_summary(c)}; image {cn.ray_of(w)} Lambda_4 {e.verdict}"

    run.step("Lambda_4 extreme rays fall into 7 orbits", lambda_rays)
    run.step("4 of the orbits are SAC_4-extreme (trivial cases)", trivial)
    run.step("fig1 is SAC_6-extreme", fixture_extreme("fig1"))
    if long:
        run.step("fig2 is SAC_9-extreme", fixture_extreme("fig2"))
        run.step("fig3 is SAC_8-extreme", fixture_extreme("fig3"))
    else:
        run.skip("fig2 is SAC_9-extreme", "needs --long")
        run.skip("fig3 is SAC_8-extreme", "needs --long")
    run.step("coarse grainings of fig1/fig2/fig3 are Lambda_4-extreme in 3 nontrivial orbits", images)
    run.step("hull{trivial rays, images} (orbit-expanded) equals Lambda_4", hull_equal())
    run.step("fig1 padded by a pure party is SAC_7-extreme and maps onto the GHZ4 orbit", padded_fig1)
    run.step(
        "hull{trivial rays, images, padded-fig1 image} (orbit-expanded) equals Lambda_4",
        lambda: hull_equal([run.cache["padded_image"]])(),
    )
    return run.report


SCENARIOS = {"n2": run_n2, "n3-chain": run_n3_chain, "n4-lambda": run_n4_lambda}


def run_scenario(name: str, threads: int = 1, long: bool = False) -> RunReport:
    return SCENARIOS[name](threads=threads, long=long)
