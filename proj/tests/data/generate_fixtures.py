#!/usr/bin/env python3
"""Regenerates the checked-in input fixtures under tests/data.

Golden sigma CSVs are not produced here; they are recorded from
`rotoblur replay` and reviewed by hand. The blurred-impulse golden is computed
independently with numpy (direct 2D convolution, clamp-to-edge borders).
"""
import math
import pathlib

import numpy as np

HERE = pathlib.Path(__file__).resolve().parent
TRACE_HEADER = ("t_us,ctrl_yaw_delta_deg,ctrl_pitch_delta_deg,"
                "head_yaw_delta_deg,head_pitch_delta_deg,head_roll_delta_deg")


def fmt(x):
    return repr(round(float(x), 6)).rstrip("0").rstrip(".") if x != 0 else "0"


def write_trace(name, meta, rows):
    lines = [f"# {k}={v}" for k, v in sorted(meta.items())] + [TRACE_HEADER]
    for t, yaw, pitch, hy, hp, hr in rows:
        lines.append(",".join([str(t), fmt(yaw), fmt(pitch), fmt(hy), fmt(hp), fmt(hr)]))
    (HERE / "traces" / name).write_text("\n".join(lines) + "\n")


def flick_and_hold():
    frame_us = 11111
    rows = []
    v = 0.0
    for i in range(420):
        t = i * frame_us
        if i < 30:
            target = 0.0
        elif i < 45:
            target = 240.0          # flick
        elif i < 150:
            target = 90.0           # sustained turn
        elif i < 200:
            target = 0.0            # stop
        elif i < 230:
            target = -300.0         # flick back
        else:
            target = 0.0
        v += (target - v) * 0.35
        rows.append((t, 0.0 if i == 0 else v * frame_us * 1e-6, 0.0,
                     0.3 * math.sin(i * 0.05), 0.1 * math.cos(i * 0.03), 0.0))
    return rows


def aim_jitter():
    rng = np.random.default_rng(20240601)
    frame_us = 11111
    rows = []
    for i in range(540):
        yaw = 0.0 if i == 0 else float(rng.normal(0.0, 0.02))
        rows.append((i * frame_us, yaw, 0.0, float(rng.normal(0.0, 1.5)),
                     float(rng.normal(0.0, 0.8)), float(rng.normal(0.0, 0.3))))
    return rows


def slalom_turns():
    rng = np.random.default_rng(7)
    rows = []
    t = 0
    for i in range(600):
        dt_us = int(rng.integers(8000, 16000)) if i else 0
        t += dt_us
        v = 160.0 * math.sin(2 * math.pi * t * 1e-6 / 1.7) ** 3
        rows.append((t, v * dt_us * 1e-6, 0.0, 5.0 * math.sin(t * 1e-6 * 3.1),
                     2.0 * math.sin(t * 1e-6 * 1.3), 0.5))
    return rows


def impulse_images():
    n = 9
    img = np.zeros((n, n))
    img[4, 4] = 1.0
    with open(HERE / "images" / "impulse_9x9.pgm", "wb") as f:
        f.write(b"P5\n9 9\n255\n" + bytes(np.round(img * 255).astype(np.uint8).ravel()))

    sigma = 2.0
    r = math.ceil(3.0 * sigma)
    offs = np.arange(-r, r + 1)
    k2 = np.exp(-(offs[:, None] ** 2 + offs[None, :] ** 2) / (2 * sigma * sigma))
    k2 /= k2.sum()
    out = np.zeros_like(img)
    for y in range(n):
        for x in range(n):
            ys = np.clip(y + offs, 0, n - 1)
            xs = np.clip(x + offs, 0, n - 1)
            out[y, x] = (k2 * img[np.ix_(ys, xs)]).sum()
    q = np.floor(np.clip(out, 0, 1) * 255 + 0.5).astype(np.uint8)
    with open(HERE / "golden" / "impulse_9x9_sigma2.pgm", "wb") as f:
        f.write(b"P5\n9 9\n255\n" + bytes(q.ravel()))


class PortedController:
    """Line-for-line port of the gating rules, standing in for the browser demo."""

    def __init__(self, a_min=200.0, frames=5, k=0.01, sigma_max=8.0, alpha=0.5,
                 attack=0.05, release=0.3, v_stop=10.0, eps=0.05):
        self.a_min, self.frames, self.k, self.sigma_max = a_min, frames, k, sigma_max
        self.alpha, self.attack, self.release, self.v_stop, self.eps = alpha, attack, release, v_stop, eps
        self.phase, self.count, self.sigma = "Idle", 0, 0.0
        self.v = self.a = 0.0
        self.last_t = 0
        self.primed = False

    def step(self, t_us, yaw):
        if not self.primed and t_us == self.last_t:
            self.primed = True
            return self.phase, self.sigma
        dt = (t_us - self.last_t) * 1e-6
        self.last_t, self.primed = t_us, True
        v_new = self.alpha * (yaw / dt) + (1 - self.alpha) * self.v
        a_raw = (v_new - self.v) / dt
        self.v = v_new
        self.a = self.alpha * a_raw + (1 - self.alpha) * self.a
        qualifies = abs(self.a) >= self.a_min
        if self.phase in ("Idle", "Pending"):
            self.count = self.count + 1 if qualifies else 0
            if self.count == 0:
                self.phase = "Idle"
            elif self.count >= self.frames:
                self.phase, self.count = "Active", 0
            else:
                self.phase = "Pending"
            self.sigma = 0.0
        elif self.phase == "Active":
            if abs(self.v) < self.v_stop:
                self.phase = "Releasing"
        elif qualifies and abs(self.v) >= self.v_stop:
            self.phase = "Active"
        if self.phase in ("Active", "Releasing"):
            target = min(self.k * abs(self.a), self.sigma_max) if self.phase == "Active" else 0.0
            tau = self.attack if target > self.sigma else self.release
            self.sigma += (target - self.sigma) * (1 - math.exp(-dt / tau))
            self.sigma = min(max(self.sigma, 0.0), self.sigma_max)
            if self.phase == "Releasing" and self.sigma < self.eps:
                self.phase, self.sigma = "Idle", 0.0
        return self.phase, self.sigma


def demo_session():
    """12 s session at ~60 Hz, prompts every 4 s, blur toggled off then on."""
    rng = np.random.default_rng(99)
    ctl = PortedController()
    trace, sigma_rows = [], []
    t, v = 0, 0.0
    while t <= 12_000_000:
        sec = t * 1e-6
        target = 200.0 * math.sin(sec * 1.3) if int(sec) % 3 else 0.0
        v += (target - v) * 0.25
        yaw = 0.0 if t == 0 else round(v * (trace_dt := 16667) * 1e-6, 6)
        trace.append((t, yaw, 0.0, 0.0, 0.0, 0.0))
        phase, sigma = ctl.step(t, yaw)
        sigma_rows.append(f"{t},{sigma:.7f},{phase},{ctl.v:.6f},{ctl.a:.6f}")
        t += 16667
    write_trace("../session/demo_session.trace.csv", {"source": "demo", "frame_rate_hz": "60"}, trace)
    (HERE / "session" / "demo_session.sigma.csv").write_text(
        "t_us,sigma_px,phase,v_deg_s,a_deg_s2\n" + "\n".join(sigma_rows) + "\n")
    events = ["t_us,event,value", "0,rb_toggled,0", "3000000,rb_toggled,1"]
    for k, pt in enumerate(range(4_000_000, 12_000_001, 4_000_000), start=1):
        events.append(f"{pt},fms_prompt,{k}")
        events.append(f"{pt + 2_500_000 if k < 3 else pt},{'fms_response' if k < 3 else 'fms_timeout'},{k if k < 3 else ''}")
    (HERE / "session" / "demo_session.events.csv").write_text("\n".join(events) + "\n")


if __name__ == "__main__":
    write_trace("flick_and_hold.csv", {"source": "synthetic", "frame_rate_hz": "90"}, flick_and_hold())
    write_trace("aim_jitter.csv", {"source": "synthetic", "frame_rate_hz": "90"}, aim_jitter())
    write_trace("slalom_turns.csv", {"source": "synthetic", "frame_rate_hz": "variable"}, slalom_turns())
    impulse_images()
    demo_session()
