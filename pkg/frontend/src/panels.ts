// Four-row comparison panel (rho, u, T, q against x) for one frame, with
// the per-node regime drawn as markers: '+' Euler, square Navier-Stokes,
// circle kinetic.  Optional reference runs overlay as solid (fluid) or
// dashed (kinetic) curves.

import { Frame, FrameSet, SchemaError, frameTime } from "./frames.js";
import { fmtTick, linScale, svgDocument, tag } from "./svg.js";

export interface PanelOptions {
  frameIndex?: number; // default: last (latest time)
  fluidRef?: FrameSet;
  kineticRef?: FrameSet;
  width?: number;
  panelHeight?: number;
}

const FIELDS: Array<[keyof Frame, string]> = [
  ["rho", "rho"],
  ["u", "u"],
  ["T", "T"],
  ["q", "q"],
];

const MARKER = {
  E: { cls: "marker-euler", color: "#2166ac" },
  N: { cls: "marker-ns", color: "#1a9850" },
  K: { cls: "marker-kinetic", color: "#d73027" },
} as const;

function checkFrame(fr: Frame): void {
  const n = fr.x.length;
  for (const [field] of FIELDS) {
    if ((fr[field] as number[]).length !== n) {
      throw new SchemaError(`frame schema mismatch: ${String(field)} has ` +
        `${(fr[field] as number[]).length} values for ${n} nodes`);
    }
  }
  if (fr.regime.length !== n) {
    throw new SchemaError("frame schema mismatch: regime column length");
  }
}

function nearestFrame(set: FrameSet, t: number): Frame {
  let best = set.frames[0];
  for (const fr of set.frames) {
    if (Math.abs(frameTime(fr) - t) < Math.abs(frameTime(best) - t)) best = fr;
  }
  return best;
}

function marker(ch: string, px: number, py: number): string {
  const m = MARKER[ch as keyof typeof MARKER];
  const s = 2.6;
  if (ch === "E") {
    return tag("path", {
      d: `M${px - s} ${py}H${px + s}M${px} ${py - s}V${py + s}`,
      class: m.cls, stroke: m.color, fill: "none", "stroke-width": 1,
    });
  }
  if (ch === "N") {
    return tag("rect", {
      x: px - s, y: py - s, width: 2 * s, height: 2 * s,
      class: m.cls, stroke: m.color, fill: "none", "stroke-width": 1,
    });
  }
  return tag("circle", {
    cx: px, cy: py, r: s,
    class: m.cls, stroke: m.color, fill: "none", "stroke-width": 1,
  });
}

function polyline(xs: number[], ys: number[], sx: (v: number) => number,
                  sy: (v: number) => number, attrs: Record<string, string | number>): string {
  const pts = xs.map((x, i) => `${sx(x).toFixed(2)},${sy(ys[i]).toFixed(2)}`).join(" ");
  return tag("polyline", { points: pts, fill: "none", ...attrs });
}

export function renderPanels(set: FrameSet, opts: PanelOptions = {}): string {
  if (set.frames.length === 0) throw new Error("no frames");
  const idx = opts.frameIndex ?? set.frames.length - 1;
  const fr = set.frames[idx];
  if (fr === undefined) {
    throw new Error(`frame index ${idx} out of range (${set.frames.length} frames)`);
  }
  checkFrame(fr);
  const t = frameTime(fr);
  const refs: Array<{ fr: Frame; attrs: Record<string, string | number> }> = [];
  if (opts.fluidRef) {
    refs.push({
      fr: nearestFrame(opts.fluidRef, t),
      attrs: { class: "ref-fluid", stroke: "#444444", "stroke-width": 1.2 },
    });
  }
  if (opts.kineticRef) {
    refs.push({
      fr: nearestFrame(opts.kineticRef, t),
      attrs: {
        class: "ref-kinetic", stroke: "#888888", "stroke-width": 1.2,
        "stroke-dasharray": "5,3",
      },
    });
  }
  for (const r of refs) checkFrame(r.fr);

  const width = opts.width ?? 640;
  const ph = opts.panelHeight ?? 150;
  const mLeft = 58, mRight = 14, mTop = 30, mGap = 12, mBottom = 34;
  const height = mTop + FIELDS.length * (ph + mGap) + mBottom - mGap;

  const xMin = Math.min(...fr.x, ...refs.map((r) => Math.min(...r.fr.x)));
  const xMax = Math.max(...fr.x, ...refs.map((r) => Math.max(...r.fr.x)));
  const sx = linScale(xMin, xMax, mLeft, width - mRight);

  const parts: string[] = [];
  const title = `${fr.meta["problem"] ?? "?"} ${fr.meta["mode"] ?? ""} t=${fmtTick(t)}`;
  parts.push(tag("text", {
    x: width / 2, y: 18, "text-anchor": "middle",
    "font-family": "sans-serif", "font-size": 13,
  }, title));

  FIELDS.forEach(([field, label], row) => {
    const y0 = mTop + row * (ph + mGap);
    const vals = fr[field] as number[];
    let lo = Math.min(...vals);
    let hi = Math.max(...vals);
    for (const r of refs) {
      lo = Math.min(lo, ...(r.fr[field] as number[]));
      hi = Math.max(hi, ...(r.fr[field] as number[]));
    }
    const pad = (hi - lo) * 0.08;
    const sy = linScale(lo - pad, hi + pad, y0 + ph, y0);

    parts.push(tag("rect", {
      x: mLeft, y: y0, width: width - mLeft - mRight, height: ph,
      fill: "none", stroke: "#999999", "stroke-width": 0.7,
    }));
    parts.push(tag("text", {
      x: 14, y: y0 + ph / 2, "font-family": "sans-serif", "font-size": 12,
      "text-anchor": "middle", transform: `rotate(-90 14 ${y0 + ph / 2})`,
    }, label));
    parts.push(tag("text", {
      x: mLeft - 4, y: y0 + 10, "text-anchor": "end",
      "font-family": "sans-serif", "font-size": 9,
    }, fmtTick(hi)));
    parts.push(tag("text", {
      x: mLeft - 4, y: y0 + ph - 2, "text-anchor": "end",
      "font-family": "sans-serif", "font-size": 9,
    }, fmtTick(lo)));

    for (const r of refs) {
      parts.push(polyline(r.fr.x, r.fr[field] as number[], sx, sy, r.attrs));
    }
    for (let i = 0; i < fr.x.length; i++) {
      parts.push(marker(fr.regime[i], sx(fr.x[i]), sy(vals[i])));
    }
  });

  const yAxis = mTop + FIELDS.length * (ph + mGap) - mGap;
  parts.push(tag("text", {
    x: mLeft, y: yAxis + 16, "font-family": "sans-serif", "font-size": 10,
  }, fmtTick(xMin)));
  parts.push(tag("text", {
    x: width - mRight, y: yAxis + 16, "text-anchor": "end",
    "font-family": "sans-serif", "font-size": 10,
  }, fmtTick(xMax)));
  parts.push(tag("text", {
    x: width / 2, y: yAxis + 16, "text-anchor": "middle",
    "font-family": "sans-serif", "font-size": 10,
  }, "x"));

  return svgDocument(width, height, parts.join("\n"));
}
