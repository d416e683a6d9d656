// Parsing of solver frame and report files.
//
// A frame file is one '#' header line of key=value metadata followed by one
// row per spatial node with the eight columns
//     x rho u T q regime nu_ns nu_b
// where regime is a single character E/N/K.  Reports are flat key=value
// files.  Both come from the solver CLI; parsing must be total on its output.

import fs from "node:fs";
import path from "node:path";

export interface Frame {
  meta: Record<string, string | number>;
  x: number[];
  rho: number[];
  u: number[];
  T: number[];
  q: number[];
  regime: string[];
  nuNs: number[];
  nuB: number[];
}

export interface FrameSet {
  frames: Frame[];
  dir: string;
}

export class SchemaError extends Error {}

export function frameTime(frame: Frame): number {
  const t = frame.meta["t"];
  return typeof t === "number" ? t : Number(t);
}

function parseValue(tok: string): string | number {
  if (/^[+-]?\d+$/.test(tok)) return parseInt(tok, 10);
  const v = Number(tok);
  if (!Number.isNaN(v) || tok.toLowerCase() === "nan") return v;
  return tok;
}

function parseFloatStrict(tok: string, where: string): number {
  const v = Number(tok);
  if (Number.isNaN(v) && tok.toLowerCase() !== "nan") {
    throw new Error(`${where}: bad float '${tok}'`);
  }
  return v;
}

export function parseFrame(text: string, name: string): Frame {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || !lines[0].startsWith("#")) {
    throw new Error(`${name}: missing '#' header line`);
  }
  const meta: Record<string, string | number> = {};
  for (const tok of lines[0].slice(1).trim().split(/\s+/)) {
    if (tok === "") continue;
    const eq = tok.indexOf("=");
    if (eq < 0) throw new Error(`${name}: bad header token '${tok}'`);
    meta[tok.slice(0, eq)] = parseValue(tok.slice(eq + 1));
  }
  const x: number[] = [], rho: number[] = [], u: number[] = [];
  const T: number[] = [], q: number[] = [], nuNs: number[] = [], nuB: number[] = [];
  const regime: string[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const where = `${name}:${i + 1}`;
    const toks = line.replace(/,/g, " ").split(/\s+/);
    if (toks.length !== 8) {
      throw new Error(`${where}: expected 8 columns, got ${toks.length}`);
    }
    if (toks[5] !== "E" && toks[5] !== "N" && toks[5] !== "K") {
      throw new Error(`${where}: bad regime label '${toks[5]}'`);
    }
    x.push(parseFloatStrict(toks[0], where));
    rho.push(parseFloatStrict(toks[1], where));
    u.push(parseFloatStrict(toks[2], where));
    T.push(parseFloatStrict(toks[3], where));
    q.push(parseFloatStrict(toks[4], where));
    regime.push(toks[5]);
    nuNs.push(parseFloatStrict(toks[6], where));
    nuB.push(parseFloatStrict(toks[7], where));
  }
  return { meta, x, rho, u, T, q, regime, nuNs, nuB };
}

export function loadFrame(file: string): Frame {
  return parseFrame(fs.readFileSync(file, "utf-8"), file);
}

/** Load every frame file in a directory, sorted by time.
 *
 * Report files (flat key=value, no '#' header) sharing the directory are
 * skipped.  Throws when the directory holds no frames at all or when the
 * frames disagree on the node count.
 */
export function loadFrames(dir: string): FrameSet {
  const frames: Frame[] = [];
  for (const entry of fs.readdirSync(dir).sort()) {
    if (!entry.endsWith(".txt")) continue;
    const file = path.join(dir, entry);
    const text = fs.readFileSync(file, "utf-8");
    if (!text.startsWith("#")) continue; // report or other artifact
    frames.push(parseFrame(text, file));
  }
  if (frames.length === 0) {
    throw new Error(`no frames in ${dir}`);
  }
  frames.sort((a, b) => frameTime(a) - frameTime(b));
  const n = frames[0].x.length;
  for (const fr of frames) {
    if (fr.x.length !== n) {
      throw new SchemaError(
        `inconsistent frame schema in ${dir}: ${fr.x.length} rows vs ${n}`);
    }
  }
  return { frames, dir };
}

export function loadReport(file: string): Record<string, string | number> {
  const out: Record<string, string | number> = {};
  for (const raw of fs.readFileSync(file, "utf-8").split(/\r?\n/)) {
    const line = raw.trim();
    if (line === "" || line.startsWith("#")) continue;
    const eq = line.indexOf("=");
    if (eq < 0) continue;
    out[line.slice(0, eq)] = parseValue(line.slice(eq + 1));
  }
  return out;
}
