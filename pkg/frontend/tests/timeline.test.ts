import { describe, expect, it } from "vitest";

import type { Frame, FrameSet } from "../src/frames.js";
import { SchemaError } from "../src/frames.js";
import { renderRegimeTimeline } from "../src/timeline.js";

function frame(regimes: string[], t: number): Frame {
  const n = regimes.length;
  const x = Array.from({ length: n }, (_, i) => i / Math.max(n - 1, 1));
  const ones = new Array(n).fill(1);
  return {
    meta: { problem: "mixed", mode: "euler-kinetic", t },
    x,
    rho: ones,
    u: ones,
    T: ones,
    q: ones,
    regime: regimes,
    nuNs: ones,
    nuB: ones,
  };
}

function setOf(...frames: Frame[]): FrameSet {
  return { frames, dir: "<memory>" };
}

function count(s: string, needle: string): number {
  return s.split(needle).length - 1;
}

describe("renderRegimeTimeline", () => {
  it("renders an all-kinetic run as a uniform raster", () => {
    const k = Array(6).fill("K");
    const svg = renderRegimeTimeline(setOf(frame(k, 0), frame(k, 0.1), frame(k, 0.2)));
    expect(svg.startsWith("<svg ")).toBe(true);
    // the last frame marks the end of the band, so 2 bands x 6 nodes
    expect(count(svg, 'class="cell-K"')).toBe(12);
    expect(count(svg, 'class="cell-E"')).toBe(0);
    expect(count(svg, 'class="cell-N"')).toBe(0);
    expect(count(svg, "#d73027")).toBe(12);
  });

  it("colors each regime differently", () => {
    const svg = renderRegimeTimeline(setOf(
      frame(["K", "K", "K", "K"], 0),
      frame(["E", "N", "K", "N"], 0.1),
      frame(["E", "E", "N", "N"], 0.2),
    ));
    expect(count(svg, 'class="cell-K"')).toBe(5);
    expect(count(svg, 'class="cell-N"')).toBe(2);
    expect(count(svg, 'class="cell-E"')).toBe(1);
    expect(svg).toContain("#4575b4");
    expect(svg).toContain("#91cf60");
    expect(svg).toContain("#d73027");
  });

  it("renders a single frame as one visible band", () => {
    const svg = renderRegimeTimeline(setOf(frame(["E", "K"], 0.05)));
    expect(count(svg, 'class="cell-E"')).toBe(1);
    expect(count(svg, 'class="cell-K"')).toBe(1);
  });

  it("rejects an empty set", () => {
    expect(() => renderRegimeTimeline(setOf())).toThrowError(/no frames/);
  });

  it("rejects frames with differing node counts", () => {
    expect(() => renderRegimeTimeline(setOf(frame(["E", "E"], 0), frame(["E"], 0.1))))
      .toThrowError(SchemaError);
  });

  it("is deterministic", () => {
    const make = () => setOf(frame(["E", "N", "K"], 0), frame(["K", "N", "E"], 0.1));
    expect(renderRegimeTimeline(make())).toBe(renderRegimeTimeline(make()));
  });
});
