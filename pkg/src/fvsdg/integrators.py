"""Explicit RK integrators: TVD-RK3, the 4-stage RK4 variant, SSPRK(10,4).

Each stage state is passed through the limiter before its residual evaluation,
and the limited state is what enters the stage combinations (the forward-Euler
limiting pattern applied per stage: u_next = lim(u) + dt L(lim(u))).
"""

import time as _time
from dataclasses import dataclass, field as dc_field

import numpy as np


class DivergenceError(RuntimeError):
    def __init__(self, scheme, stage, t):
        super().__init__(
            f"non-finite state after stage {stage} of {scheme} at t={t:.6g}"
        )
        self.stage = stage
        self.time = t


def _check(u, scheme, stage, t):
    if not np.all(np.isfinite(u)):
        raise DivergenceError(scheme, stage, t)
    return u


def step_tvdrk3(u0, rhs, limit, dt, t):
    v0 = limit(u0, t)
    u1 = _check(v0 + dt * rhs(v0, t), "TVD-RK3", 1, t)
    v1 = limit(u1, t + dt)
    u2 = _check(
        0.75 * v0 + 0.25 * v1 + 0.25 * dt * rhs(v1, t + dt), "TVD-RK3", 2, t
    )
    v2 = limit(u2, t + 0.5 * dt)
    return _check(
        v0 / 3.0 + 2.0 / 3.0 * v2 + 2.0 / 3.0 * dt * rhs(v2, t + 0.5 * dt),
        "TVD-RK3",
        3,
        t,
    )


def step_rk4(u0, rhs, limit, dt, t):
    v0 = limit(u0, t)
    u1 = _check(v0 + 0.5 * dt * rhs(v0, t), "RK4", 1, t)
    v1 = limit(u1, t + 0.5 * dt)
    u2 = _check(v0 + 0.5 * dt * rhs(v1, t + 0.5 * dt), "RK4", 2, t)
    v2 = limit(u2, t + 0.5 * dt)
    u3 = _check(v0 + dt * rhs(v2, t + 0.5 * dt), "RK4", 3, t)
    v3 = limit(u3, t + dt)
    return _check(
        (-v0 + v1 + 2.0 * v2 + v3) / 3.0 + dt / 6.0 * rhs(v3, t + dt), "RK4", 4, t
    )


# per-stage time offsets of the spatial operator in SSPRK(10,4)
_SSP104_TIMES = (0.0, 1 / 6, 1 / 3, 1 / 2, 2 / 3, 1 / 3, 1 / 2, 2 / 3, 5 / 6, 1.0)


def step_ssprk104(u0, rhs, limit, dt, t):
    v = limit(u0, t)
    v0 = v
    for s in range(4):
        u = _check(v + dt / 6.0 * rhs(v, t + _SSP104_TIMES[s] * dt), "SSPRK104", s + 1, t)
        v = limit(u, t + _SSP104_TIMES[s + 1] * dt)
    v4 = v
    k4 = rhs(v4, t + 2.0 / 3.0 * dt)
    u = _check(0.6 * v0 + 0.4 * v4 + dt / 15.0 * k4, "SSPRK104", 5, t)
    v = limit(u, t + _SSP104_TIMES[5] * dt)
    for s in range(5, 9):
        u = _check(v + dt / 6.0 * rhs(v, t + _SSP104_TIMES[s] * dt), "SSPRK104", s + 1, t)
        v = limit(u, t + _SSP104_TIMES[min(s + 1, 9)] * dt)
    v9 = v
    return _check(
        v0 / 25.0
        + 9.0 / 25.0 * v4
        + 0.6 * v9
        + 3.0 / 50.0 * dt * k4
        + 0.1 * dt * rhs(v9, t + dt),
        "SSPRK104",
        10,
        t,
    )


STEPPERS = {
    "tvdrk3": step_tvdrk3,
    "rk3": step_tvdrk3,
    "rk4": step_rk4,
    "ssprk104": step_ssprk104,
}


def make_stepper(name):
    try:
        return STEPPERS[name.lower().replace("-", "").replace("_", "")]
    except KeyError:
        raise ValueError(f"unknown integrator {name!r}") from None


@dataclass
class RunReport:
    steps: int = 0
    final_time: float = 0.0
    wall_seconds: float = 0.0
    troubled_per_step: list = dc_field(default_factory=list)
    freeze_fallbacks: int = 0
    troubled_log: list = dc_field(default_factory=list)  # (step, cell, component)


def integrate(field, operator, t_end, cfl, integrator="tvdrk3", limiter=None,
              dt_max=None, log_troubled=False, max_steps=10_000_000):
    """March `field` to t_end with stable steps, clamping the last step.

    `limiter` is an object with apply(coeffs, t) -> (coeffs, mask) or None.
    Returns (field, RunReport).
    """
    stepper = make_stepper(integrator) if isinstance(integrator, str) else integrator
    report = RunReport()
    start = _time.perf_counter()

    mask_holder = {}

    if limiter is None:
        def limit(u, t):
            return u
    else:
        def limit(u, t):
            out, mask = limiter.apply(u, t)
            if mask is not None:
                mask_holder["last"] = mask
            return out

    rhs = operator.residual
    u = field.coeffs
    t = field.time
    while t < t_end - 1e-14 * max(1.0, abs(t_end)):
        dt = operator.stable_dt(u, t, cfl, dt_max)
        if t + dt > t_end:
            dt = t_end - t
        u = stepper(u, rhs, limit, dt, t)
        t += dt
        report.steps += 1
        if limiter is not None:
            mask = mask_holder.get("last")
            count = int(np.count_nonzero(mask)) if mask is not None else 0
            report.troubled_per_step.append(count)
            if log_troubled and mask is not None and count:
                for idx in np.argwhere(mask):
                    report.troubled_log.append((report.steps, *idx.tolist()))
        if report.steps >= max_steps:
            raise RuntimeError(f"exceeded {max_steps} steps before t_end")
    if limiter is not None:
        report.freeze_fallbacks = getattr(limiter, "freeze_fallbacks", 0)
    report.final_time = t
    report.wall_seconds = _time.perf_counter() - start
    from .field import ModalField

    out = ModalField(u, field.mesh, field.basis, t)
    return out, report
