"""Experiment runner: builds a solver from a RunConfig, integrates, computes
error norms against exact or reference-mesh solutions, and writes CSV output
plus a gnuplot script."""

import csv
import os
from dataclasses import dataclass, field as dc_field, replace

import numpy as np

from .basis import Basis1D, Basis2D
from .cases import get_case
from .dg import make_operator
from .field import field_from_function
from .fluxes import LaxFriedrichsGlobal, ScalarLLF, ScalarSW, make_scheme
from .integrators import integrate
from .limiters import Limiter, LimiterConfig
from .mesh import Mesh1D, Mesh2D
from .quadrature import gauss_rule, tensor_rule

NORMS = ("L1", "L2", "Linf")


@dataclass
class RunConfig:
    case: str = None
    K: int = None
    N: object = None              # int or (nx, ny)
    cfl: float = None
    t_end: float = None
    flux: str = None
    flux_delta: float = 0.0
    llf_mode: str = "local"
    llf_alpha: float = None
    lf_global_M: float = None
    integrator: str = None
    limiter: str = None           # none | classical | istvb | isl2tvb
    w_is: float = None
    w_l2: float = None
    tvb_m: float = None
    indicator: str = None
    characteristic: bool = None
    freeze: str = None
    out: str = None
    threads: int = 1
    seed: int = 0
    dt_max: float = None
    log_troubled: bool = False

    def resolved(self):
        """Fill unset fields from the case defaults."""
        if self.case is None:
            raise ValueError("run configuration needs a case id")
        spec = get_case(self.case)
        d = spec.defaults
        cfg = replace(self)
        for key in ("K", "N", "cfl", "flux", "integrator"):
            if getattr(cfg, key) is None:
                setattr(cfg, key, d.get(key))
        if cfg.t_end is None:
            cfg.t_end = spec.t_end
        if cfg.limiter is None:
            cfg.limiter = d.get("limiter", "none")
        if cfg.w_is is None:
            cfg.w_is = d.get("w_is", 1.0)
        if cfg.w_l2 is None:
            cfg.w_l2 = d.get("w_l2", 0.0)
        if cfg.tvb_m is None:
            cfg.tvb_m = d.get("tvb_m", 0.0)
        if cfg.indicator is None:
            cfg.indicator = d.get("indicator", "tvb")
        if cfg.characteristic is None:
            cfg.characteristic = d.get("characteristic", False)
        if cfg.freeze is None:
            cfg.freeze = d.get("freeze", "arithmetic")
        if cfg.llf_alpha is None:
            cfg.llf_alpha = d.get("llf_alpha")
        if cfg.llf_mode == "local" and d.get("llf_mode"):
            cfg.llf_mode = d["llf_mode"]
        if cfg.K is None or cfg.N is None or cfg.cfl is None or cfg.flux is None:
            raise ValueError(f"case {self.case!r} leaves K/N/cfl/flux unset")
        if cfg.integrator is None:
            cfg.integrator = "tvdrk3"
        return cfg, spec


def build_scheme(cfg):
    name = cfg.flux.lower()
    if name in ("sw", "steger-warming"):
        return make_scheme("sw", delta=cfg.flux_delta)
    if name == "scalar-sw":
        return ScalarSW(delta=cfg.flux_delta)
    if name == "scalar-llf":
        return ScalarLLF(mode=cfg.llf_mode, alpha=cfg.llf_alpha)
    if name == "lf-global":
        return LaxFriedrichsGlobal(M=cfg.lf_global_M)
    return make_scheme(name)


def build_solver(cfg, spec):
    model = spec.make_model()
    if spec.dim == 1:
        a, b = spec.domain
        mesh = Mesh1D(a, b, int(cfg.N))
        basis = Basis1D(cfg.K)
    else:
        a, b, c, d = spec.domain
        n = cfg.N if isinstance(cfg.N, (tuple, list)) else (int(cfg.N), int(cfg.N))
        mesh = Mesh2D(a, b, c, d, int(n[0]), int(n[1]))
        basis = Basis2D(cfg.K)
    scheme = build_scheme(cfg)
    op = make_operator(model, mesh, basis, scheme, spec.bc)
    fld = field_from_function(spec.ic, mesh, basis)
    limiter = None
    if cfg.limiter and cfg.limiter != "none":
        lc = LimiterConfig(
            kind=cfg.limiter,
            w_is=cfg.w_is,
            w_l2=cfg.w_l2,
            tvb_m=cfg.tvb_m,
            indicator=cfg.indicator,
            characteristic=bool(cfg.characteristic),
            freeze=cfg.freeze,
        )
        limiter = Limiter(op, lc)
    return model, mesh, basis, op, fld, limiter


# ---------------------------------------------------------------------------
# error norms
# ---------------------------------------------------------------------------

def quad_points_1d(mesh, nq):
    rule = gauss_rule(nq)
    x = mesh.centers()[:, None] + mesh.dx * rule.points[None, :]
    return x, rule.weights


def quad_points_2d(mesh, nq):
    xi, eta, w = tensor_rule(nq)
    cx, cy = mesh.centers()
    x = cx[:, :, None] + mesh.dx * xi[None, None, :]
    y = cy[:, :, None] + mesh.dy * eta[None, None, :]
    return x, y, w


def eval_field(field, nq=None):
    """(points..., values) of the field at per-cell quadrature points."""
    basis = field.basis
    nq = nq if nq is not None else basis.degree + 2
    if field.ndim == 1:
        x, w = quad_points_1d(field.mesh, nq)
        rule = gauss_rule(nq)
        tab = basis.ref_eval(rule.points)
        vals = field.mesh.dx ** -0.5 * np.einsum("cim,qm->cqi", field.coeffs, tab)
        return (x,), w, vals
    x, y, w = quad_points_2d(field.mesh, nq)
    xi, eta, _ = tensor_rule(nq)
    tab = basis.ref_eval(xi, eta)
    vals = (field.mesh.dx * field.mesh.dy) ** -0.5 * np.einsum(
        "xyim,qm->xyqi", field.coeffs, tab
    )
    return (x, y), w, vals


def error_norms(field, exact, nq=None, normalized=True):
    """Per-component L1/L2/Linf of field - exact at quadrature points.

    normalized=True divides by the domain measure (mean norms), the convention
    of the reference convergence tables; normalized=False gives plain integral
    norms.
    """
    pts, w, vals = eval_field(field, nq)
    ref = exact(*pts, field.time)
    absd = np.abs(vals - ref).reshape(-1, len(w), vals.shape[-1])
    # per-cell quadrature weights sum to 1, so weighting each cell by its
    # volume integrates; weighting by 1/ncells averages over the domain
    cell_w = 1.0 / absd.shape[0] if normalized else field.cell_volume()
    l1 = cell_w * np.einsum("q,cqi->i", w, absd)
    l2 = np.sqrt(cell_w * np.einsum("q,cqi->i", w, absd**2))
    linf = absd.reshape(-1, absd.shape[-1]).max(axis=0)
    return {"L1": l1, "L2": l2, "Linf": linf}


def evaluate_reference_at(ref_field, pts):
    """Point-evaluate a (finer-mesh) reference field; meshes must be nested."""
    basis = ref_field.basis
    mesh = ref_field.mesh
    if ref_field.ndim == 1:
        (x,) = pts
        idx = np.clip(((x - mesh.a) / mesh.dx).astype(int), 0, mesh.n - 1)
        xi = (x - (mesh.a + (idx + 0.5) * mesh.dx)) / mesh.dx
        flat_xi = xi.ravel()
        tab = basis.ref_eval(flat_xi)
        coef = ref_field.coeffs[idx.ravel()]
        vals = mesh.dx ** -0.5 * np.einsum("pim,pm->pi", coef, tab)
        return vals.reshape(x.shape + (ref_field.ncomp,))
    x, y = pts
    ix = np.clip(((x - mesh.a) / mesh.dx).astype(int), 0, mesh.nx - 1)
    iy = np.clip(((y - mesh.c) / mesh.dy).astype(int), 0, mesh.ny - 1)
    xi = (x - (mesh.a + (ix + 0.5) * mesh.dx)) / mesh.dx
    eta = (y - (mesh.c + (iy + 0.5) * mesh.dy)) / mesh.dy
    tab = basis.ref_eval(xi.ravel(), eta.ravel())
    coef = ref_field.coeffs[ix.ravel(), iy.ravel()]
    vals = (mesh.dx * mesh.dy) ** -0.5 * np.einsum("pim,pm->pi", coef, tab)
    return vals.reshape(x.shape + (ref_field.ncomp,))


def error_norms_vs_reference(field, ref_field, nq=None):
    def exact(*args):
        return evaluate_reference_at(ref_field, args[:-1])

    return error_norms(field, exact, nq)


# ---------------------------------------------------------------------------
# runs and convergence studies
# ---------------------------------------------------------------------------

@dataclass
class RunResult:
    config: RunConfig
    field: object
    report: object
    errors: dict = None
    outputs: list = dc_field(default_factory=list)


def run(config):
    cfg, spec = config.resolved()
    model, mesh, basis, op, fld, limiter = build_solver(cfg, spec)
    out_field, report = integrate(
        fld,
        op,
        cfg.t_end,
        cfg.cfl,
        integrator=cfg.integrator,
        limiter=limiter,
        dt_max=cfg.dt_max,
        log_troubled=cfg.log_troubled,
    )
    errors = None
    if spec.exact is not None:
        errors = error_norms(out_field, spec.exact)
    result = RunResult(cfg, out_field, report, errors)
    if cfg.out:
        write_outputs(result, spec)
    return result


def convergence_study(config, meshes, reference_factor=2):
    """Errors and orders over a doubling mesh sequence.

    Cases without an exact solution are compared against a run at
    reference_factor x the finest mesh.
    """
    if len(meshes) < 2:
        raise ValueError("convergence study needs at least two meshes")
    cfg0, spec = config.resolved()
    ref_field = None
    if spec.exact is None:
        nref = meshes[-1] * reference_factor
        rcfg = replace(cfg0, N=nref, out=None)
        ref_field = run(replace(rcfg, case=cfg0.case)).field

    rows = []
    for n in meshes:
        res = run(replace(cfg0, N=n, out=None))
        if spec.exact is not None:
            errs = res.errors
        else:
            errs = error_norms_vs_reference(res.field, ref_field)
        rows.append((n, errs))

    ncomp = len(rows[0][1]["L1"])
    table = {"meshes": [r[0] for r in rows], "errors": {}, "orders": {}}
    for norm in NORMS:
        e = np.array([r[1][norm] for r in rows])  # (nmesh, ncomp)
        table["errors"][norm] = e
        with np.errstate(divide="ignore", invalid="ignore"):
            table["orders"][norm] = np.log2(e[:-1] / e[1:])
    table["ncomp"] = ncomp
    if config.out:
        write_convergence(table, config)
    return table


def format_convergence_text(table, component_names=None):
    ncomp = table["ncomp"]
    names = component_names or [f"comp{i}" for i in range(ncomp)]
    lines = []
    header = f"{'mesh':>8}"
    for norm in NORMS:
        header += f" {norm + '-error':>12} {norm + '-order':>10}"
    for c in range(ncomp):
        lines.append(f"# component {names[c]}")
        lines.append(header)
        for i, n in enumerate(table["meshes"]):
            row = f"{n:>8}"
            for norm in NORMS:
                e = table["errors"][norm][i, c]
                row += f" {e:>12.4E}"
                if i == 0:
                    row += f" {'-':>10}"
                else:
                    row += f" {table['orders'][norm][i - 1, c]:>10.4f}"
            lines.append(row)
        lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# file output
# ---------------------------------------------------------------------------

def write_outputs(result, spec):
    cfg = result.config
    os.makedirs(cfg.out, exist_ok=True)
    field = result.field
    sol_path = os.path.join(cfg.out, "solution.csv")
    pts, _, vals = eval_field(field)
    ncomp = vals.shape[-1]
    with open(sol_path, "w", newline="") as f:
        w = csv.writer(f)
        if field.ndim == 1:
            w.writerow(["x"] + [f"comp{i}" for i in range(ncomp)])
            x = pts[0]
            means = field.cell_means()
            centers = field.mesh.centers()
            allx = np.concatenate([x.ravel(), centers])
            allv = np.concatenate([vals.reshape(-1, ncomp), means], axis=0)
            order = np.argsort(allx, kind="stable")
            for i in order:
                w.writerow([f"{allx[i]:.12g}"] + [f"{v:.12g}" for v in allv[i]])
        else:
            w.writerow(["x", "y"] + [f"comp{i}" for i in range(ncomp)])
            x, y = pts
            cx, cy = field.mesh.centers()
            means = field.cell_means()
            allx = np.concatenate([x.ravel(), cx.ravel()])
            ally = np.concatenate([y.ravel(), cy.ravel()])
            allv = np.concatenate(
                [vals.reshape(-1, ncomp), means.reshape(-1, ncomp)], axis=0
            )
            order = np.lexsort((ally, allx))
            for i in order:
                w.writerow(
                    [f"{allx[i]:.12g}", f"{ally[i]:.12g}"]
                    + [f"{v:.12g}" for v in allv[i]]
                )
    result.outputs.append(sol_path)

    if cfg.log_troubled and result.report.troubled_log:
        tpath = os.path.join(cfg.out, "troubled.csv")
        with open(tpath, "w", newline="") as f:
            w = csv.writer(f)
            if field.ndim == 1:
                w.writerow(["step", "cell", "component"])
            else:
                w.writerow(["step", "ix", "iy", "component"])
            for row in result.report.troubled_log:
                w.writerow(row)
        result.outputs.append(tpath)

    gp = os.path.join(cfg.out, "plot.gp")
    with open(gp, "w") as f:
        if field.ndim == 1:
            f.write(
                "set datafile separator ','\n"
                f"set title '{cfg.case} at t={field.time:.4g}'\n"
                "plot 'solution.csv' using 1:2 skip 1 with points pt 7 ps 0.3 title 'comp0'\n"
            )
        else:
            f.write(
                "set datafile separator ','\n"
                f"set title '{cfg.case} at t={field.time:.4g}'\n"
                "set view map\n"
                "splot 'solution.csv' using 1:2:3 skip 1 with points pt 5 ps 0.4 palette title 'comp0'\n"
            )
    result.outputs.append(gp)
    return result.outputs


def write_convergence(table, config):
    os.makedirs(config.out, exist_ok=True)
    path = os.path.join(config.out, "convergence.csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        header = ["mesh", "component"]
        for norm in NORMS:
            header += [f"{norm}_error", f"{norm}_order"]
        w.writerow(header)
        for i, n in enumerate(table["meshes"]):
            for c in range(table["ncomp"]):
                row = [n, c]
                for norm in NORMS:
                    row.append(f"{table['errors'][norm][i, c]:.6E}")
                    row.append(
                        "" if i == 0 else f"{table['orders'][norm][i - 1, c]:.4f}"
                    )
                w.writerow(row)
    txt = os.path.join(config.out, "convergence.txt")
    with open(txt, "w") as f:
        f.write(format_convergence_text(table))
    return [path, txt]
