"""Scenario configuration, report assembly and deterministic serialization.

A scenario is a JSON document::

    {
      "system": {"q": [...], "b": [...]}            # or masses/springs
      "perturbation": {"site": 2, "theta": 0.5, "shift": 0.0},
      "tolerances": {"eigen_tol": 1e-12, "match_tol": 1e-9},
      "grid": {"re": {"start": -5, "stop": 1, "num": 25}, "im": [0.1]},
      "commands": ["spectrum", "classify"],
      "seed": 0,
      "campaign": {"min_triples": 1000}
    }

Everything except ``system`` is optional.  The schema is shipped as
``config_schema.json`` next to this module.

Reports are written with sorted keys and every float printed with 17
significant digits, so identical scenarios give byte-identical files.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .errors import (
    HypothesisViolated,
    ParseError,
    PoleAt,
    SpectraError,
    TheoremViolation,
    ValidationError,
)
from .green_weyl import green
from .operator_model import (
    JacobiMatrix,
    MassSpringChain,
    Perturbation,
    apply_perturbation,
    chain_to_jacobi,
    perturb_chain,
)
from .perturbation_analysis import (
    DEFAULT_MATCH_REL,
    classify,
    master,
)
from .spectral_engine import (
    DEFAULT_REL_TOL,
    eigenvalues,
    spectral_diameter,
    spectral_measure,
)
from .verification import (
    run_interlacing_campaign,
    theorem_gaps,
    verify_interlacing,
    zero_equivalence,
)

COMMANDS = ("spectrum", "perturb", "green", "master", "classify", "verify",
            "campaign")
NEEDS_PERTURBATION = frozenset({"perturb", "green", "master", "classify",
                                "verify"})
TOP_LEVEL_KEYS = frozenset({"system", "perturbation", "tolerances", "grid",
                            "commands", "seed", "campaign"})
MASTER_RTOL = 1e-8
DEFAULT_GRID_NUM = 41
DEFAULT_GRID_IM = 0.25
DEFAULT_CAMPAIGN_TRIPLES = 1000
EIGEN_COLUMNS = ("index", "lambda_J", "lambda_Jt", "class")


# -- configuration ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ScenarioConfig:
    """Validated scenario.  ``matrix`` is always set; ``chain`` only when the
    system was given as masses and springs."""

    matrix: JacobiMatrix
    chain: MassSpringChain | None
    perturbation: Perturbation | None
    eigen_tol: float
    match_tol: float
    grid: tuple
    commands: tuple
    seed: int = 0
    campaign_triples: int = DEFAULT_CAMPAIGN_TRIPLES

    @property
    def N(self):
        return self.matrix.size

    def to_dict(self):
        """Normalised form with all defaults filled in."""
        if self.chain is not None:
            system = {"masses": self.chain.masses.tolist(),
                      "springs": self.chain.springs.tolist()}
        else:
            system = {"q": self.matrix.diag.tolist(),
                      "b": self.matrix.offdiag.tolist()}
        system["N"] = self.N
        out = {
            "system": system,
            "tolerances": {"eigen_tol": self.eigen_tol,
                           "match_tol": self.match_tol},
            "grid": {"points": [[z.real, z.imag] for z in self.grid]},
            "commands": list(self.commands),
            "seed": self.seed,
            "campaign": {"min_triples": self.campaign_triples},
        }
        if self.perturbation is not None:
            p = self.perturbation
            out["perturbation"] = {"site": p.site, "theta": p.theta,
                                   "shift": p.shift}
        return out

    @property
    def config_hash(self):
        return hashlib.sha256(dumps_canonical(self.to_dict()).encode()).hexdigest()

    def with_overrides(self, commands=None, seed=None):
        """Copy with the command list and/or seed replaced (CLI flags)."""
        kw = dict(self.__dict__)
        if commands is not None:
            kw["commands"] = tuple(commands)
            _check_commands(kw["commands"], self.perturbation)
        if seed is not None:
            kw["seed"] = _check_seed(seed)
        return ScenarioConfig(**kw)


def _line_of(text, key):
    if text is None:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


class _Reader:
    """Typed field access that reports the offending field and its line."""

    def __init__(self, text):
        self.text = text

    def fail(self, msg, key):
        raise ParseError(msg, line=_line_of(self.text, key.split(".")[-1]),
                         field=key)

    def obj(self, value, key):
        if not isinstance(value, dict):
            self.fail("expected an object", key)
        return value

    def number(self, value, key):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail("expected a number", key)
        return float(value)

    def integer(self, value, key):
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail("expected an integer", key)
        return value

    def numbers(self, value, key):
        if not isinstance(value, list):
            self.fail("expected an array of numbers", key)
        return [self.number(v, f"{key}") for v in value]


def _check_commands(commands, perturbation):
    for c in commands:
        if c not in COMMANDS:
            raise ValidationError("known-command", f"unknown command {c!r}")
        if c in NEEDS_PERTURBATION and perturbation is None:
            raise ValidationError("perturbation-required",
                                  f"command {c!r} needs a perturbation")
    return tuple(commands)


def _check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        raise ValidationError("seed-range", "seed must be an integer in [0, 2**64)")
    return seed


def _system(rd, raw):
    sysd = rd.obj(raw, "system")
    unknown = set(sysd) - {"q", "b", "masses", "springs", "N"}
    if unknown:
        rd.fail(f"unknown key {sorted(unknown)[0]!r}", "system")
    has_qb = "q" in sysd or "b" in sysd
    has_chain = "masses" in sysd or "springs" in sysd
    if has_qb and has_chain:
        raise ValidationError("system-exclusive",
                              "give either q/b or masses/springs, not both")
    if not (has_qb or has_chain):
        raise ValidationError("system-missing",
                              "system needs q/b or masses/springs")
    pair = ("q", "b") if has_qb else ("masses", "springs")
    for k in pair:
        if k not in sysd:
            raise ValidationError("system-incomplete", f"missing system.{k}")
    first = rd.numbers(sysd[pair[0]], f"system.{pair[0]}")
    second = rd.numbers(sysd[pair[1]], f"system.{pair[1]}")
    N = len(first)
    if N == 0:
        raise ValidationError("N-consistency", "the system is empty")
    if "N" in sysd:
        given = rd.integer(sysd["N"], "system.N")
        if given != N:
            raise ValidationError("N-consistency",
                                  f"N={given} but system.{pair[0]} has {N} entries")
    expect = N - 1 if has_qb else N + 1
    if len(second) != expect:
        raise ValidationError(
            "N-consistency",
            f"system.{pair[1]} needs {expect} entries for N={N}, got {len(second)}")
    try:
        if has_qb:
            return JacobiMatrix(first, second), None
        chain = MassSpringChain(first, second)
        return chain_to_jacobi(chain), chain
    except ValueError as exc:
        inv = "positive-offdiagonal" if has_qb else "positive-chain"
        raise ValidationError(inv, str(exc)) from None


def _perturbation(rd, raw, N):
    pd = rd.obj(raw, "perturbation")
    unknown = set(pd) - {"site", "theta", "shift", "gamma"}
    if unknown:
        rd.fail(f"unknown key {sorted(unknown)[0]!r}", "perturbation")
    for k in ("site", "theta"):
        if k not in pd:
            raise ValidationError("perturbation-incomplete",
                                  f"missing perturbation.{k}")
    site = rd.integer(pd["site"], "perturbation.site")
    theta = rd.number(pd["theta"], "perturbation.theta")
    if not 1 <= site <= N:
        raise ValidationError("site-range", f"site must lie in 1..{N}, got {site}")
    if not theta > 0 or not math.isfinite(theta):
        raise ValidationError("positive-theta", f"theta must be positive, got {theta}")
    if "shift" in pd and "gamma" in pd:
        raise ValidationError("perturbation-exclusive",
                              "give either shift or gamma, not both")
    if "gamma" in pd:
        if theta == 1.0:
            raise ValidationError("positive-theta", "gamma needs theta != 1")
        return Perturbation.with_gamma(
            site, theta, rd.number(pd["gamma"], "perturbation.gamma"))
    shift = rd.number(pd.get("shift", 0.0), "perturbation.shift")
    return Perturbation(site, theta, shift)


def _grid(rd, raw, J):
    if raw is None:
        lo, hi = J.gershgorin_bounds()
        re_vals = np.linspace(lo - 1.0, hi + 1.0, DEFAULT_GRID_NUM)
        return tuple(complex(x, DEFAULT_GRID_IM) for x in re_vals)
    gd = rd.obj(raw, "grid")
    if "points" in gd:
        if set(gd) != {"points"}:
            raise ValidationError("grid-exclusive",
                                  "grid.points excludes grid.re/grid.im")
        pts = gd["points"]
        if not isinstance(pts, list):
            rd.fail("expected an array of [re, im] pairs", "grid.points")
        out = []
        for pt in pts:
            if not isinstance(pt, list) or len(pt) != 2:
                rd.fail("expected an array of [re, im] pairs", "grid.points")
            re_, im_ = (rd.number(v, "grid.points") for v in pt)
            out.append(complex(re_, im_))
        if not out:
            raise ValidationError("grid-nonempty", "grid.points is empty")
        return tuple(out)
    red = rd.obj(gd.get("re"), "grid.re")
    for k in ("start", "stop", "num"):
        if k not in red:
            raise ValidationError("grid-incomplete", f"missing grid.re.{k}")
    start = rd.number(red["start"], "grid.re.start")
    stop = rd.number(red["stop"], "grid.re.stop")
    num = rd.integer(red["num"], "grid.re.num")
    if num < 1:
        raise ValidationError("grid-nonempty", "grid.re.num must be >= 1")
    ims = rd.numbers(gd.get("im", [DEFAULT_GRID_IM]), "grid.im")
    if not ims:
        raise ValidationError("grid-nonempty", "grid.im is empty")
    return tuple(complex(x, y) for y in ims
                 for x in np.linspace(start, stop, num))


def config_from_dict(raw, text=None):
    """Validate an already decoded config; ``text`` is used for line numbers."""
    rd = _Reader(text)
    if not isinstance(raw, dict):
        raise ParseError("the top level must be an object", line=1)
    unknown = set(raw) - TOP_LEVEL_KEYS
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(f"unknown key {key!r}", line=_line_of(text, key),
                         field=key)
    if "system" not in raw:
        raise ValidationError("system-missing", "the config needs a system")
    J, chain = _system(rd, raw["system"])
    p = _perturbation(rd, raw["perturbation"], J.size) if "perturbation" in raw else None

    tol = rd.obj(raw.get("tolerances", {}), "tolerances")
    unknown = set(tol) - {"eigen_tol", "match_tol"}
    if unknown:
        rd.fail(f"unknown key {sorted(unknown)[0]!r}", "tolerances")
    diam = spectral_diameter(J)
    if p is not None:
        diam = max(diam, spectral_diameter(apply_perturbation(J, p)))
    eigen_tol = (rd.number(tol["eigen_tol"], "tolerances.eigen_tol")
                 if "eigen_tol" in tol else DEFAULT_REL_TOL * spectral_diameter(J))
    match_tol = (rd.number(tol["match_tol"], "tolerances.match_tol")
                 if "match_tol" in tol else DEFAULT_MATCH_REL * diam)
    for name, v in (("eigen_tol", eigen_tol), ("match_tol", match_tol)):
        if not (v > 0 and math.isfinite(v)):
            raise ValidationError("positive-tolerance",
                                  f"tolerances.{name} must be positive, got {v}")

    grid = _grid(rd, raw.get("grid"), J)
    cmds = raw.get("commands", ["spectrum"])
    if not isinstance(cmds, list) or not all(isinstance(c, str) for c in cmds):
        rd.fail("expected an array of command names", "commands")
    if not cmds:
        raise ValidationError("known-command", "commands is empty")
    commands = _check_commands(cmds, p)
    seed = _check_seed(raw.get("seed", 0))
    camp = rd.obj(raw.get("campaign", {}), "campaign")
    triples = rd.integer(camp.get("min_triples", DEFAULT_CAMPAIGN_TRIPLES),
                         "campaign.min_triples")
    if triples < 1:
        raise ValidationError("campaign-size", "campaign.min_triples must be >= 1")
    return ScenarioConfig(J, chain, p, eigen_tol, match_tol, grid, commands,
                          seed, triples)


def parse_config(path):
    """Read and validate a scenario file.

    Raises
    ------
    ParseError
        Malformed JSON or a field of the wrong type; carries ``line`` and
        ``field``.
    ValidationError
        A well-formed file violating a scenario invariant.
    OSError
        The file cannot be read.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_config_text(text)


def parse_config_text(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return config_from_dict(raw, text)


# -- report -----------------------------------------------------------------

@dataclass
class Table:
    columns: tuple
    rows: list


@dataclass
class Verdict:
    name: str
    passed: bool
    gap: tuple | None = None
    detail: object = None


@dataclass
class ReportBundle:
    """Everything one run produced.

    ``sections`` maps a command name to its JSON-ready payload; ``tables``
    maps a table name to its rows; ``verdicts`` and ``hypotheses`` collect
    theorem checks that passed/failed and hypotheses that did not hold.
    """

    header: dict
    sections: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    hypotheses: list = field(default_factory=list)
    gaps: list = field(default_factory=list)

    @property
    def exit_code(self):
        if any(not v.passed for v in self.verdicts):
            return 2
        if self.hypotheses:
            return 3
        return 0

    def to_dict(self):
        return plain({
            "header": self.header,
            "sections": self.sections,
            "tables": {k: {"columns": list(t.columns), "rows": t.rows}
                       for k, t in self.tables.items()},
            "verdicts": [{"name": v.name, "passed": v.passed,
                          "gap": list(v.gap) if v.gap is not None else None,
                          "detail": v.detail} for v in self.verdicts],
            "hypothesis_violations": self.hypotheses,
            "gaps": [list(g) for g in self.gaps],
            "exit_code": self.exit_code,
        })


def plain(obj):
    """Convert numbers, arrays and containers into JSON-ready values.

    Complex numbers become ``{"re", "im"}``; non-finite floats become the
    strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": plain(obj.real), "im": plain(obj.imag)}
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, Perturbation):
        return {"site": obj.site, "theta": obj.theta, "shift": obj.shift}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def format_float(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def dumps_canonical(obj, indent=2):
    """JSON text with sorted keys and 17-significant-digit floats.

    The standard encoder prints floats with ``repr``; this writer keeps the
    digit count fixed.
    """
    obj = plain(obj)
    out = []

    def enc(o, level):
        pad = "\n" + " " * (indent * (level + 1))
        end = "\n" + " " * (indent * level)
        if o is None:
            out.append("null")
        elif o is True:
            out.append("true")
        elif o is False:
            out.append("false")
        elif isinstance(o, int):
            out.append(str(o))
        elif isinstance(o, float):
            out.append(format_float(o))
        elif isinstance(o, str):
            out.append(json.dumps(o))
        elif isinstance(o, dict):
            if not o:
                out.append("{}")
                return
            out.append("{")
            for i, k in enumerate(sorted(o)):
                out.append(("," if i else "") + pad + json.dumps(k) + ": ")
                enc(o[k], level + 1)
            out.append(end + "}")
        elif isinstance(o, list):
            if not o:
                out.append("[]")
                return
            out.append("[")
            for i, v in enumerate(o):
                out.append(("," if i else "") + pad)
                enc(v, level + 1)
            out.append(end + "]")
        else:
            raise TypeError(type(o).__name__)

    enc(obj, 0)
    return "".join(out) + "\n"


def _eigen_table(eJ, eT=None, report=None):
    rows = []
    if report is None:
        for x in eJ:
            rows.append([x, None, "J"])
    else:
        rows += [[x, y, "common"] for x, y in report.common]
        rows += [[x, None, "J_only"] for x in report.J_only]
        rows += [[None, y, "Jt_only"] for y in report.Jt_only]
        rows.sort(key=lambda r: r[0] if r[0] is not None else r[1])
    return Table(EIGEN_COLUMNS, [[i + 1] + r for i, r in enumerate(rows)])


def _cplx_cols(name):
    return (f"{name}_re", f"{name}_im")


def _grid_rows(cfg, J, Jt, p):
    rows = []
    for z in cfg.grid:
        try:
            m = master(J, p, z, Jt=Jt)
            G = green(J, z, p.site)
            Gt = green(Jt, z, p.site)
        except PoleAt:
            rows.append((z, None))
            continue
        rows.append((z, (G, Gt, m)))
    return rows


def _c(v):
    return [None, None] if v is None else [complex(v).real, complex(v).imag]


class _Runner:
    def __init__(self, cfg):
        self.cfg = cfg
        self.J = cfg.matrix
        self.p = cfg.perturbation
        self.Jt = apply_perturbation(self.J, self.p) if self.p is not None else None
        self._grid = None
        self._classification = None

    def grid(self):
        if self._grid is None:
            self._grid = _grid_rows(self.cfg, self.J, self.Jt, self.p)
        return self._grid

    def classification(self):
        if self._classification is None:
            self._classification = classify(self.J, self.p, self.cfg.match_tol,
                                            Jt=self.Jt)
        return self._classification

    # one method per command; each fills the bundle in place

    def spectrum(self, out):
        cfg, J = self.cfg, self.J
        lam = eigenvalues(J, cfg.eigen_tol)
        rho = spectral_measure(J, cfg.eigen_tol)
        sec = {"N": J.size, "eigen_tol": cfg.eigen_tol,
               "diameter": spectral_diameter(J),
               "eigenvalues_J": lam, "weights_J": rho.weights,
               "weight_positions_J": rho.positions}
        if self.p is not None:
            sec["eigenvalues_Jt"] = eigenvalues(self.Jt, cfg.eigen_tol)
            out.tables["eigen"] = _eigen_table(lam, report=self.classification())
        else:
            out.tables["eigen"] = _eigen_table(lam)
        out.sections["spectrum"] = sec

    def perturb(self, out):
        p, Jt = self.p, self.Jt
        sec = {"perturbation": p, "gamma": p.gamma, "inverse": p.inverse(),
               "Jt": {"diag": Jt.diag, "offdiag": Jt.offdiag},
               "eigenvalues_Jt": eigenvalues(Jt, self.cfg.eigen_tol)}
        if self.cfg.chain is not None:
            chain2, grounded = perturb_chain(self.cfg.chain, p)
            sec["chain"] = {"masses": chain2.masses, "springs": chain2.springs,
                            "grounded_site": p.site, "grounded_spring": grounded}
        out.sections["perturb"] = sec
        out.tables["eigen"] = _eigen_table(eigenvalues(self.J),
                                           report=self.classification())

    def green(self, out):
        cols = (("status",) + _cplx_cols("z") + _cplx_cols("G") + _cplx_cols("Gt")
                + _cplx_cols("ratio") + _cplx_cols("affine") + ("discrepancy",))
        rows = []
        for z, vals in self.grid():
            if vals is None:
                rows.append(["pole"] + _c(z) + [None] * 9)
                continue
            G, Gt, m = vals
            rows.append(["ok"] + _c(z) + _c(G) + _c(Gt) + _c(m.ratio)
                        + _c(m.affine) + [m.discrepancy])
        out.tables["green"] = Table(cols, rows)
        out.sections["green"] = {"site": self.p.site, "points": len(rows),
                                 "poles": sum(r[0] == "pole" for r in rows)}

    def master(self, out):
        cols = (("status",) + _cplx_cols("z") + _cplx_cols("ratio")
                + _cplx_cols("affine") + _cplx_cols("reciprocal_ratio")
                + _cplx_cols("reciprocal_affine") + ("discrepancy",))
        rows, disc = [], []
        for z, vals in self.grid():
            if vals is None:
                rows.append(["pole"] + _c(z) + [None] * 9)
                continue
            m = vals[2]
            disc.append(m.discrepancy)
            rows.append(["ok"] + _c(z) + _c(m.ratio) + _c(m.affine)
                        + _c(m.reciprocal_ratio) + _c(m.reciprocal_affine)
                        + [m.discrepancy])
        out.tables["master"] = Table(cols, rows)
        stats = {"count": len(disc), "poles": len(rows) - len(disc),
                 "max": max(disc) if disc else 0.0,
                 "mean": float(np.mean(disc)) if disc else 0.0,
                 "rtol": MASTER_RTOL}
        out.sections["master"] = {"gamma": self.p.gamma, "residuals": stats}
        out.verdicts.append(Verdict("master-identity",
                                    stats["max"] <= MASTER_RTOL,
                                    detail={"max": stats["max"]}))

    def classify(self, out):
        rep = self.classification()
        gaps = []
        for rec in rep.gap_records:
            gaps.append({
                "lower": rec.lower, "upper": rec.upper, "new": rec.new,
                "common": rec.common,
                "regions": [{"name": r.name, "lower": r.lower, "upper": r.upper,
                             "new": r.new, "common": r.common,
                             "attractor_ok": r.attractor_ok}
                            for r in rec.regions]})
        out.sections["classify"] = {
            "gamma": rep.gamma, "theta": rep.theta, "site": rep.site,
            "match_tol": rep.match_tol, "swapped": rep.swapped,
            "common": [list(c) for c in rep.common],
            "J_only": rep.J_only, "Jt_only": rep.Jt_only, "gaps": gaps,
            "common_zero_violations": [[r, g] for r, g in rep.common_zero_violations]}
        out.tables["eigen"] = _eigen_table(rep.eigs_J, report=rep)
        out.verdicts.append(Verdict("common-green-zero",
                                    not rep.common_zero_violations,
                                    detail=len(rep.common_zero_violations)))

    def verify(self, out):
        J, p, Jt = self.J, self.p, self.Jt
        cols = ("gap_lower", "gap_upper", "region", "check", "passed")
        rows = []
        results = []
        if p.theta == 1.0:
            out.hypotheses.append({"check": "interlacing", "gap": None,
                                   "hypothesis": "theta-one"})
        else:
            tol = self.cfg.match_tol
            gaps = (theorem_gaps(J, p, bounded=False, match_tol=tol)
                    + theorem_gaps(J, p, bounded=True, match_tol=tol))
            for gp in sorted(gaps, key=lambda g: (g.lower, g.upper)):
                key = (gp.lower, gp.upper)
                try:
                    v = verify_interlacing(J, p, gp, match_tol=tol)
                except HypothesisViolated as exc:
                    out.hypotheses.append({"check": "interlacing", "gap": list(key),
                                           "hypothesis": exc.hypothesis})
                    continue
                except TheoremViolation as exc:
                    out.gaps.append(key)
                    out.verdicts.append(Verdict("interlacing", False, key, str(exc)))
                    rows.append([*key, "", "borel-confirmation", False])
                    continue
                out.gaps.append(key)
                regions = []
                for r in v.regions:
                    regions.append({"name": r.name, "lower": r.lower,
                                    "upper": r.upper, "new": r.new,
                                    "common": r.common, "borel_roots": r.borel_roots,
                                    "checks": r.checks})
                    for k in sorted(r.checks):
                        rows.append([*key, r.name, k, bool(r.checks[k])])
                if "ray:common" in v.failures:
                    rows.append([*key, "ray", "no_common", False])
                out.verdicts.append(Verdict("interlacing", v.passed, key, v.failures))
                results.append({"gap": list(key), "passed": v.passed,
                                "failures": v.failures, "regions": regions,
                                "gamma_in_spectrum": v.gamma_in_spectrum})
            # gamma is an eigenvalue of both operators or of neither
            g = p.gamma
            in_J = bool(np.min(np.abs(eigenvalues(J) - g)) <= tol)
            in_Jt = bool(np.min(np.abs(eigenvalues(Jt) - g)) <= tol)
            out.verdicts.append(Verdict("gamma-persistence", in_J == in_Jt,
                                        detail={"in_J": in_J, "in_Jt": in_Jt}))
            rows.append([None, None, "", "gamma-persistence", in_J == in_Jt])
        zrows = zero_equivalence(J, p, Jt=Jt)
        zero_ok = all(r[-1] for r in zrows)
        out.verdicts.append(Verdict("zero-equivalence", zero_ok,
                                    detail={"zeros": len(zrows)}))
        rows.append([None, None, "", "zero-equivalence", zero_ok])
        out.tables["verify"] = Table(cols, rows)
        out.sections["verify"] = {
            "gamma": p.gamma, "swapped": p.theta > 1, "interlacing": results,
            "zero_equivalence": [{"operator": r[0], "x": r[1], "G": r[2],
                                  "Gt": r[3], "ok": r[4]} for r in zrows]}

    def campaign(self, out):
        res = run_interlacing_campaign(self.cfg.campaign_triples, self.cfg.seed)
        summary = {"triples": res.triples, "failures": len(res.failures),
                   "hypothesis_skips": res.hypothesis_skips,
                   "with_common": res.with_common,
                   "with_both_witnesses": res.with_both_witnesses,
                   "swapped": res.swapped, "passed": res.passed}
        out.sections["campaign"] = dict(
            summary, seed=self.cfg.seed, min_triples=self.cfg.campaign_triples,
            failure_details=[{"instance": i, "kind": k, "perturbation": p,
                              "gap": [g.lower, g.upper], "failures": f}
                             for i, k, p, g, f in res.failures])
        cols = tuple(summary)
        out.tables["campaign"] = Table(cols, [[summary[c] for c in cols]])
        out.verdicts.append(Verdict("campaign", res.passed, detail=summary))


def run(config):
    """Run every command of ``config`` and collect the results.

    Computation errors are re-raised as :class:`SpectraError` carrying the
    command name.
    """
    header = {"tool": "jacobi-spectra", "version": __version__,
              "config_sha256": config.config_hash,
              "commands": list(config.commands), "seed": config.seed}
    out = ReportBundle(header)
    runner = _Runner(config)
    for cmd in config.commands:
        try:
            getattr(runner, cmd)(out)
        except SpectraError as exc:
            raise SpectraError(f"{cmd}: {exc}") from exc
    return out


PRIMARY_TABLE = {"spectrum": "eigen", "perturb": "eigen", "classify": "eigen",
                 "green": "green", "master": "master", "verify": "verify",
                 "campaign": "campaign"}


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return str(v)


def render(report, fmt="json", table=None):
    """Report text in ``fmt``.  CSV holds one table, by default the main
    table of the first command."""
    if fmt == "json":
        return dumps_canonical(report.to_dict())
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    if table is None:
        first = report.header["commands"][0]
        table = PRIMARY_TABLE[first]
    t = report.tables[table]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(t.columns)
    for row in t.rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def emit(report, fmt="json", path=None, table=None):
    """Write the report to ``path`` (standard output when ``None``)."""
    text = render(report, fmt, table)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


__all__ = [
    "ScenarioConfig", "ReportBundle", "Table", "Verdict", "COMMANDS",
    "parse_config", "parse_config_text", "config_from_dict", "run", "emit",
    "render", "dumps_canonical", "plain",
]
