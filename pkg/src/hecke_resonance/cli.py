"""Command-line runner: ``hecke-resonance <subcommand> [flags]``.

Every run writes its outputs plus ``manifest.json`` (config hash, library
versions, wall time, sha256 of each output).  Numeric outputs never contain
timings, so identical configs give byte-identical files.  On failure every
file written so far is removed.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import hashlib
import io
import json
import math
import os
import platform
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import metadata, resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import primerange

from .afe import AfeConfig, evaluate_family, lambda_from_value
from .ideals import primes_above
from .quadratic_field import DomainError, Split, build_field, splitting_type
from .resonance import (
    ResonatorSpec,
    ResourceError,
    brute_xi,
    custom_resonator,
    desk_resonator,
    euler_xi,
    extreme_value_search,
    moment_denominator,
    moment_numerator,
    offdiagonal_probe,
    rankin_diagnostics,
    resonator_coeffs,
    resonator_length_param,
)
from .special import (
    KernelConfig,
    cutoff_V_gamma,
    cutoff_V_quadrature,
    decay_constants,
    derivative_decay_constants,
    verify_rho_asymptotics,
    verify_rho_derivative,
)

SUBCOMMANDS = ("field-info", "verify-kernels", "compute-l", "euler-check", "moment", "probe-offdiag", "search")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


class ConfigError(DomainError):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    d: int = -1
    X: float = 4096.0
    epsilon: float = 0.05
    afe: AfeConfig = field(default_factory=AfeConfig)
    kernel: KernelConfig = field(default_factory=KernelConfig)
    threads: int = 1
    seed: int = 0
    out_dir: str = "out"
    N: Optional[float] = None
    resonator: str = "auto"
    ell_range: Optional[Tuple[int, int]] = None
    nu_max: int = 4
    m_max: int = 4
    probe_sample: int = 4

    def __post_init__(self):
        if not 0 < self.epsilon < 0.2:
            raise ConfigError("epsilon must lie in (0, 0.2)")
        if not (math.isfinite(self.X) and self.X >= 100):
            raise ConfigError("X must be at least 100")
        if self.threads < 1:
            raise ConfigError("threads must be a positive integer")
        if self.resonator not in ("auto", "full", "desk"):
            raise ConfigError("resonator must be 'auto', 'full' or 'desk'")
        if self.N is not None and not (math.isfinite(self.N) and self.N >= 1):
            raise ConfigError("N must be finite and at least 1")
        if self.ell_range is not None and self.ell_range[0] > self.ell_range[1]:
            raise ConfigError("ell_range must be lo:hi with lo <= hi")
        if self.nu_max < 0 or self.m_max < 0 or self.probe_sample < 0:
            raise ConfigError("nu_max, m_max and probe_sample must be nonnegative")
        build_field(self.d)  # validates d

    @property
    def resonator_N(self) -> float:
        return self.N if self.N is not None else self.X ** (0.25 - self.epsilon)

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "X": repr(self.X),
            "epsilon": repr(self.epsilon),
            "afe": {k: repr(v) for k, v in asdict(self.afe).items()},
            "kernel": {k: (v if isinstance(v, str) or v is None else repr(v)) for k, v in asdict(self.kernel).items()},
            "threads": self.threads,
            "seed": self.seed,
            "out_dir": self.out_dir,
            "N": None if self.N is None else repr(self.N),
            "resonator": self.resonator,
            "ell_range": None if self.ell_range is None else list(self.ell_range),
            "nu_max": self.nu_max,
            "m_max": self.m_max,
            "probe_sample": self.probe_sample,
        }
        return out


_TOP_KEYS = {f for f in ExperimentConfig.__dataclass_fields__}
_REAL_KEYS = {"X", "epsilon", "N"}
_INT_KEYS = {"d", "threads", "seed", "nu_max", "m_max", "probe_sample"}


def _real(key: str, v: Any) -> float:
    if isinstance(v, bool):
        raise ConfigError(f"{key}: expected a real, got a boolean")
    if isinstance(v, (int, decimal.Decimal)):
        return float(v)
    if isinstance(v, str):
        try:
            return float(decimal.Decimal(v.strip()))
        except decimal.InvalidOperation:
            raise ConfigError(f"{key}: {v!r} is not a decimal string") from None
    raise ConfigError(f"{key}: expected a decimal string, got {type(v).__name__}")


def _int(key: str, v: Any) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ConfigError(f"{key}: expected an integer")
    try:
        return int(v)
    except ValueError:
        raise ConfigError(f"{key}: {v!r} is not an integer") from None


def _sub_config(cls, key: str, raw: Any):
    if not isinstance(raw, dict):
        raise ConfigError(f"{key}: expected an object")
    fields = cls.__dataclass_fields__
    unknown = sorted(set(raw) - set(fields))
    if unknown:
        raise ConfigError(f"{key}: unknown keys {unknown}")
    kw = {}
    for k, v in raw.items():
        if k == "precision_mode":
            kw[k] = str(v)
        elif k == "quad_halfwidth" and v is None:
            kw[k] = None
        else:
            kw[k] = _real(f"{key}.{k}", v)
    try:
        return cls(**kw)
    except DomainError as e:
        raise ConfigError(f"{key}: {e}") from None


def parse_ell_range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise ConfigError(f"ell range {text!r} must look like LO:HI") from None
    return lo, hi


def config_from_dict(raw: Dict[str, Any]) -> ExperimentConfig:
    unknown = sorted(set(raw) - _TOP_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys {unknown}")
    kw: Dict[str, Any] = {}
    for k, v in raw.items():
        if k in _REAL_KEYS:
            kw[k] = None if (k == "N" and v is None) else _real(k, v)
        elif k in _INT_KEYS:
            kw[k] = _int(k, v)
        elif k == "afe":
            kw[k] = _sub_config(AfeConfig, k, v)
        elif k == "kernel":
            kw[k] = _sub_config(KernelConfig, k, v)
        elif k == "ell_range":
            if v is None:
                kw[k] = None
            elif isinstance(v, str):
                kw[k] = parse_ell_range(v)
            elif isinstance(v, list) and len(v) == 2:
                kw[k] = (_int("ell_range", v[0]), _int("ell_range", v[1]))
            else:
                raise ConfigError("ell_range must be 'LO:HI' or [lo, hi]")
        else:
            kw[k] = str(v)
    try:
        return ExperimentConfig(**kw)
    except DomainError as e:
        raise ConfigError(str(e)) from None


def load_config(path: Optional[str]) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    try:
        raw = json.loads(text, parse_float=decimal.Decimal)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return raw


# ---------------------------------------------------------------------------
# output handling
# ---------------------------------------------------------------------------

def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def csv_columns(name: str) -> List[str]:
    schema = json.loads(resources.files("hecke_resonance").joinpath("csv_schema.json").read_text("utf-8"))
    return [c for c, _ in schema["files"][name]["columns"]]


class Outputs:
    """Tracks written files so they can be hashed or rolled back."""

    def __init__(self, out_dir: Path):
        self.dir = out_dir
        self.files: List[Path] = []

    def _write(self, path: Path, data: bytes) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        self.files.append(path)
        tmp = path.with_name(path.name + ".partial")
        tmp.write_bytes(data)
        os.replace(tmp, path)
        return path

    def json(self, name: str, obj: Any) -> Path:
        text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"
        return self._write(self._path(name), text.encode("utf-8"))

    def csv(self, name: str, schema_name: str, rows: Sequence[Dict[str, Any]]) -> Path:
        cols = csv_columns(schema_name)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in cols])
        return self._write(self._path(name), buf.getvalue().encode("utf-8"))

    def _path(self, name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.dir / p

    def manifest(self, subcommand: str, cfg: ExperimentConfig, wall: float) -> Path:
        canon = json.dumps(cfg.to_json(), sort_keys=True, separators=(",", ":"))
        entries = []
        for p in self.files:
            data = p.read_bytes()
            entries.append({"path": os.path.relpath(p, self.dir), "sha256": hashlib.sha256(data).hexdigest(),
                            "bytes": len(data)})
        man = {
            "subcommand": subcommand,
            "config": cfg.to_json(),
            "config_sha256": hashlib.sha256(canon.encode("utf-8")).hexdigest(),
            "versions": _versions(),
            "wall_time_s": round(wall, 3),
            "files": entries,
        }
        path = self.dir / "manifest.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(man, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def rollback(self) -> None:
        for p in self.files:
            for q in (p, p.with_name(p.name + ".partial")):
                try:
                    q.unlink()
                except FileNotFoundError:
                    pass


def _versions() -> Dict[str, str]:
    out = {"python": platform.python_version()}
    for pkg in ("artifact", "numpy", "scipy", "sympy", "mpmath"):
        try:
            out[pkg] = metadata.version(pkg)
        except metadata.PackageNotFoundError:
            out[pkg] = "unknown"
    return out


# ---------------------------------------------------------------------------
# resonator selection
# ---------------------------------------------------------------------------

def make_resonator(cfg: ExperimentConfig) -> ResonatorSpec:
    K = build_field(cfg.d)
    N = cfg.resonator_N
    kind = cfg.resonator
    if kind == "auto":
        kind = "full" if N >= math.exp(10) else "desk"
    return resonator_coeffs(N, K) if kind == "full" else desk_resonator(N, K)


def _rankin_json(spec: ResonatorSpec) -> Dict[str, Any]:
    try:
        r = rankin_diagnostics(spec)
    except DomainError as e:
        keys = ("G_alpha", "H_alpha", "E_alpha", "xi_00", "xi_a0", "xi_aa", "ratio_a0", "ratio_aa")
        return {**{k: None for k in keys}, "note": str(e)}
    out = {k: repr(v) for k, v in asdict(r).items()}
    out.update(ratio_a0=repr(r.ratio_a0), ratio_aa=repr(r.ratio_aa))
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def kernel_rows(kcfg: KernelConfig) -> List[Dict[str, Any]]:
    """Rows of the special-function verification suites."""
    rows = []

    def add(check, params, measured, threshold):
        rows.append({"check": check, "params": params, "measured": float(measured),
                     "threshold": float(threshold), "passed": bool(measured <= threshold)})

    for x in (0.5, 2, 10, 50, 200):
        for y in (x / 4, x / 2, x, 2 * x, 4 * x):
            err = abs(cutoff_V_quadrature(y, x, kcfg) - cutoff_V_gamma(y, x))
            add("kernel_identity", f"x={x!r};y={y!r}", err, 1e-9)
    for y in (0.1, 1.0, 10.0):
        add("V_half_exp", f"y={y!r}", abs(cutoff_V_gamma(y, 0.5) - math.exp(-y)), 1e-10)
    for x in (25, 100, 400):
        for k, v in decay_constants(x).items():
            add("decay_" + k, f"x={x}", v, 10)
        for k, v in derivative_decay_constants(x).items():
            add("decay_" + k, f"x={x}", v, 50)
    for x in (10, 100, 1000):
        for sigma in (0, 1):
            for t in (0, 1, 5):
                add("rho_asymptotics", f"x={x};sigma={sigma};t={t}", verify_rho_asymptotics(x, sigma, t), 10 / x)
                add("rho_derivative", f"x={x};sigma={sigma};t={t};n=1",
                    verify_rho_derivative(x, complex(sigma, t), 1), 20 / x)
    return rows


def cmd_field_info(cfg: ExperimentConfig, out: Outputs) -> int:
    K = build_field(cfg.d)
    info = K.to_json()
    info["cyclic_decomposition"] = [list(t) for t in K.cyclic_decomposition]
    info["small_primes"] = [
        {"p": p, "splitting": splitting_type(p, K).value, "ideals": [P.tag() for P in primes_above(K, p)]}
        for p in (2, 3, 5, 7, 11, 13)
    ]
    out.json("field.json", info)
    return EXIT_OK


def cmd_verify_kernels(cfg: ExperimentConfig, out: Outputs) -> int:
    rows = kernel_rows(cfg.kernel)
    out.csv("kernels.csv", "kernels.csv", rows)
    failed = [r for r in rows if not r["passed"]]
    for r in failed:
        print(f"FAIL {r['check']} {r['params']}: {r['measured']!r} > {r['threshold']!r}", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def _l_rows(K, values) -> List[Dict[str, Any]]:
    rows = []
    for v in values:
        lam = lambda_from_value(K, v.ell, v.value)
        rows.append({"ell": v.ell, "class_char_index": v.class_char_index, "L_half": v.value,
                     "log_abs_L": v.log_abs, "floored": v.floored, "log_abs_lambda": lam.log_abs_lambda,
                     "n_terms": v.n_terms, "est_err": v.est_err, "slack_used": v.slack_used,
                     "imag_residue": v.imag_residue})
    return rows


def cmd_compute_l(cfg: ExperimentConfig, out: Outputs) -> int:
    K = build_field(cfg.d)
    lo, hi = cfg.ell_range if cfg.ell_range is not None else (K.omega_K, 10 * K.omega_K)
    ells = [e for e in range(lo, hi + 1) if e != 0 and e % K.omega_K == 0]
    if not ells:
        raise ConfigError(f"ell_range {lo}:{hi} holds no nonzero multiple of omega_K = {K.omega_K}")
    values = evaluate_family(K, ells, cfg.afe, cfg.threads)
    out.csv("l_values.csv", "l_values.csv", _l_rows(K, values))
    return EXIT_OK


def cmd_euler_check(cfg: ExperimentConfig, out: Outputs) -> int:
    K = build_field(cfg.d)
    pool = []
    for p in primerange(3, 10**4):
        if splitting_type(p, K) is Split.SPLIT:
            pool.append(primes_above(K, p)[0])
            if len(pool) == 4:
                break
    N = math.exp(40)
    L = resonator_length_param(N)
    rows, failed = [], 0
    for mask in range(1 << len(pool)):
        chosen = [P for i, P in enumerate(pool) if mask >> i & 1]
        spec = custom_resonator(K, N, [(P, L / (math.sqrt(P.norm) * math.log(P.norm))) for P in chosen])
        a = spec.alpha
        for a1, a2 in ((0.0, 0.0), (a, 0.0), (a, a)):
            e, b = euler_xi(a1, a2, spec), brute_xi(a1, a2, spec)
            rel = abs(e / b - 1)
            ok = rel <= 1e-10
            failed += not ok
            rows.append({"support": " ".join(P.tag() for P in chosen), "alpha1": a1, "alpha2": a2,
                         "euler": e, "brute": b, "rel_err": rel, "passed": ok})
    out.csv("euler.csv", "euler.csv", rows)
    rankin = {}
    for logN in (40, 70, 100):
        spec = resonator_coeffs(math.exp(logN), K)
        rankin[f"e^{logN}"] = {"support_size": len(spec.pairs), **_rankin_json(spec)}
    out.json("rankin.json", rankin)
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def cmd_moment(cfg: ExperimentConfig, out: Outputs) -> int:
    spec = make_resonator(cfg)
    den, model = moment_denominator(cfg.X, spec, epsilon=cfg.epsilon)
    lower_ok = spec.N <= cfg.X ** (0.25 - cfg.epsilon) * (1 + 1e-12)
    num = moment_numerator(cfg.X, spec, cfg=cfg.afe, epsilon=cfg.epsilon, threads=cfg.threads, want_lower=lower_ok)
    out.json("moments.json", {
        "X": repr(cfg.X),
        "resonator": spec.to_json(),
        "denominator_direct": repr(den),
        "denominator_diagonal": repr(model),
        "denominator_rel_diff": repr(abs(den - model) / den),
        "numerator_direct": repr(num.direct),
        "numerator_diagonal": repr(num.diagonal_lower) if lower_ok else None,
        "numerator_diagonal_exact": repr(num.diagonal_exact),
        "offdiag_mass": repr(num.offdiag_mass),
        "offdiag_ratio": repr(num.offdiag_mass / abs(num.direct)),
    })
    return EXIT_OK


def cmd_probe(cfg: ExperimentConfig, out: Outputs) -> int:
    spec = make_resonator(cfg)
    probes = offdiagonal_probe(cfg.X, spec, nu_max=cfg.nu_max, m_max=cfg.m_max,
                               sample=cfg.probe_sample, seed=cfg.seed, epsilon=cfg.epsilon)
    rows = [{"a": p.a, "b": p.b, "nu": p.nu, "m": p.m, "Dnu_lo": p.window_Dnu[0], "Dnu_hi": p.window_Dnu[1],
             "Im_lo": p.window_Im[0], "Im_hi": p.window_Im[1], "count": p.count, "bound": p.bound,
             "ratio": p.ratio, "eta": p.eta} for p in probes]
    out.csv("probes.csv", "probes.csv", rows)
    return EXIT_OK


def cmd_search(cfg: ExperimentConfig, out: Outputs, report_name: str = "report.json") -> int:
    K = build_field(cfg.d)
    spec = make_resonator(cfg)
    res = extreme_value_search(cfg.X, spec, cfg=cfg.afe, epsilon=cfg.epsilon, threads=cfg.threads)
    sidecar = Path(report_name).stem + "_values.csv"
    report = res.to_json()
    report.update(
        d=cfg.d,
        X=repr(cfg.X),
        resonator=spec.to_json(),
        rankin=_rankin_json(spec),
        argmax={"ell": res.ell_star, "class_char_index": res.class_index_star,
                "log_abs_L": repr(res.log_abs_L_star)},
        values_csv=sidecar,
    )
    out.csv(sidecar, "l_values.csv", _l_rows(K, res.values))
    out.json(report_name, report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hecke-resonance", description=__doc__.splitlines()[0])
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--config", help="JSON config; reals as decimal strings")
    ap.add_argument("--d", type=int)
    ap.add_argument("--X", type=str)
    ap.add_argument("--epsilon", type=str)
    ap.add_argument("--threads", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--out", help="output directory, or a .json report path for search")
    ap.add_argument("--ell-range", dest="ell_range", help="LO:HI for compute-l")
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    out: Optional[Outputs] = None
    try:
        raw = load_config(args.config)
        for key in ("d", "X", "epsilon", "threads", "seed", "ell_range"):
            v = getattr(args, key)
            if v is not None:
                raw[key] = v
        report_name = "report.json"
        if args.out is not None:
            if args.out.endswith(".json"):
                report_name = Path(args.out).name
                raw["out_dir"] = str(Path(args.out).parent)
            else:
                raw["out_dir"] = args.out
        cfg = config_from_dict(raw)
        out = Outputs(Path(cfg.out_dir))
        handler = {
            "field-info": cmd_field_info,
            "verify-kernels": cmd_verify_kernels,
            "compute-l": cmd_compute_l,
            "euler-check": cmd_euler_check,
            "moment": cmd_moment,
            "probe-offdiag": cmd_probe,
        }.get(args.subcommand)
        status = handler(cfg, out) if handler else cmd_search(cfg, out, report_name)
        out.manifest(args.subcommand, cfg, time.perf_counter() - t0)
        return status
    except DomainError as e:
        code, msg = EXIT_CONFIG, f"error: {e}"
    except ResourceError as e:
        code, msg = EXIT_RESOURCE, f"resource limit: {e}"
    except BaseException:
        if out is not None:
            out.rollback()
        raise
    if out is not None:
        out.rollback()
    print(msg, file=sys.stderr)
    return code


def main() -> None:  # pragma: no cover - console entry
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
