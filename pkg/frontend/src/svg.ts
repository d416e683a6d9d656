// Minimal SVG string assembly.  No DOM: documents are built as text so the
// renderer runs the same under node and in tests.

export type Attrs = Record<string, string | number>;

export function tag(name: string, attrs: Attrs, body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === ""
    ? `<${name} ${parts}/>`
    : `<${name} ${parts}>${body}</${name}>`;
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    tag("rect", { x: 0, y: 0, width, height, fill: "white" }) +
    "\n" + body + "\n</svg>\n"
  );
}

/** Linear map from a data domain onto pixel range; degenerate domains get
 * padded so a constant field still draws mid-panel. */
export function linScale(d0: number, d1: number, r0: number, r1: number) {
  if (d0 === d1) {
    d0 -= 0.5;
    d1 += 0.5;
  }
  const k = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * k;
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) return String(Number(v.toPrecision(4)));
  return v.toExponential(2);
}
