// Space-time raster of the regime map: one row per frame interval, one
// cell per node, colored by regime label.

import { FrameSet, SchemaError, frameTime } from "./frames.js";
import { fmtTick, linScale, svgDocument, tag } from "./svg.js";

export const REGIME_COLORS: Record<string, string> = {
  E: "#4575b4",
  N: "#91cf60",
  K: "#d73027",
};

export interface TimelineOptions {
  width?: number;
  height?: number;
}

export function renderRegimeTimeline(set: FrameSet, opts: TimelineOptions = {}): string {
  if (set.frames.length === 0) throw new Error("no frames");
  const nNodes = set.frames[0].x.length;
  for (const fr of set.frames) {
    if (fr.x.length !== nNodes || fr.regime.length !== nNodes) {
      throw new SchemaError("frame schema mismatch across timeline");
    }
  }

  const width = opts.width ?? 640;
  const height = opts.height ?? 360;
  const mLeft = 58, mRight = 14, mTop = 30, mBottom = 40;

  const xs = set.frames[0].x;
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const times = set.frames.map(frameTime);
  const t0 = times[0];
  const tEnd = times[times.length - 1];
  // a single frame still gets a visible band
  const tSpan = tEnd > t0 ? tEnd - t0 : 1;

  const sx = linScale(xMin, xMax, mLeft, width - mRight);
  const sy = linScale(t0, t0 + tSpan, height - mBottom, mTop);

  // node midpoints as column edges
  const edges: number[] = new Array(nNodes + 1);
  edges[0] = xs[0] - (nNodes > 1 ? (xs[1] - xs[0]) / 2 : 0.5);
  for (let i = 1; i < nNodes; i++) edges[i] = (xs[i - 1] + xs[i]) / 2;
  edges[nNodes] = xs[nNodes - 1] + (nNodes > 1 ? (xs[nNodes - 1] - xs[nNodes - 2]) / 2 : 0.5);

  const parts: string[] = [];
  const fr0 = set.frames[0];
  parts.push(tag("text", {
    x: width / 2, y: 18, "text-anchor": "middle",
    "font-family": "sans-serif", "font-size": 13,
  }, `regime map ${fr0.meta["problem"] ?? "?"} ${fr0.meta["mode"] ?? ""}`));

  for (let k = 0; k < set.frames.length; k++) {
    const fr = set.frames[k];
    const tLo = times[k];
    const tHi = k + 1 < times.length ? times[k + 1] : t0 + tSpan;
    if (tHi <= tLo) continue;
    const yTop = sy(tHi);
    const yBot = sy(tLo);
    for (let i = 0; i < nNodes; i++) {
      const color = REGIME_COLORS[fr.regime[i]];
      parts.push(tag("rect", {
        x: sx(edges[i]).toFixed(2),
        y: yTop.toFixed(2),
        width: (sx(edges[i + 1]) - sx(edges[i])).toFixed(2),
        height: (yBot - yTop).toFixed(2),
        fill: color,
        class: `cell-${fr.regime[i]}`,
      }));
    }
  }

  parts.push(tag("rect", {
    x: mLeft, y: mTop, width: width - mLeft - mRight,
    height: height - mTop - mBottom,
    fill: "none", stroke: "#999999", "stroke-width": 0.7,
  }));
  parts.push(tag("text", {
    x: mLeft, y: height - mBottom + 16, "font-family": "sans-serif",
    "font-size": 10,
  }, fmtTick(xMin)));
  parts.push(tag("text", {
    x: width - mRight, y: height - mBottom + 16, "text-anchor": "end",
    "font-family": "sans-serif", "font-size": 10,
  }, fmtTick(xMax)));
  parts.push(tag("text", {
    x: width / 2, y: height - mBottom + 16, "text-anchor": "middle",
    "font-family": "sans-serif", "font-size": 10,
  }, "x"));
  parts.push(tag("text", {
    x: mLeft - 6, y: height - mBottom, "text-anchor": "end",
    "font-family": "sans-serif", "font-size": 9,
  }, `t=${fmtTick(t0)}`));
  parts.push(tag("text", {
    x: mLeft - 6, y: mTop + 8, "text-anchor": "end",
    "font-family": "sans-serif", "font-size": 9,
  }, `t=${fmtTick(tEnd)}`));

  return svgDocument(width, height, parts.join("\n"));
}
