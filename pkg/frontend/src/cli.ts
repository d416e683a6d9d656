#!/usr/bin/env node
// Render solver frame directories to SVG (or HTML-wrapped SVG) figures.
//
//   hierbgk-plot --input <dir> [--reference <dir>] --out <dir> [--format svg|html]
//
// The reference directory, when given, overlays as a dashed curve on the
// field panels.  Exit codes: 0 ok, 2 usage, 1 runtime failure.

import { mkdirSync, realpathSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import process from "node:process";
import { fileURLToPath } from "node:url";

import { loadFrames } from "./frames.js";
import { renderPanels } from "./panels.js";
import { renderRegimeTimeline } from "./timeline.js";

interface Args {
  input: string;
  reference?: string;
  out: string;
  format: "svg" | "html";
}

const USAGE =
  "usage: hierbgk-plot --input DIR [--reference DIR] --out DIR [--format svg|html]";

export function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let reference: string | undefined;
  let out: string | undefined;
  let format: "svg" | "html" = "svg";
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    const next = (): string => {
      i += 1;
      if (i >= argv.length) throw new UsageError(`${a} needs a value`);
      return argv[i];
    };
    switch (a) {
      case "--input":
        input = next();
        break;
      case "--reference":
        reference = next();
        break;
      case "--out":
        out = next();
        break;
      case "--format": {
        const v = next();
        if (v !== "svg" && v !== "html") {
          throw new UsageError(`--format must be svg or html, got '${v}'`);
        }
        format = v;
        break;
      }
      case "--help":
      case "-h":
        throw new HelpRequested();
      default:
        throw new UsageError(`unknown argument '${a}'`);
    }
  }
  if (input === undefined) throw new UsageError("--input is required");
  if (out === undefined) throw new UsageError("--out is required");
  return { input, reference, out, format };
}

export class UsageError extends Error {}
export class HelpRequested extends Error {}

function wrapHtml(svg: string, title: string): string {
  return `<!DOCTYPE html>
<html><head><meta charset="utf-8"><title>${title}</title></head>
<body>\n${svg}\n</body></html>\n`;
}

export function runCli(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof HelpRequested) {
      process.stdout.write(USAGE + "\n");
      return 0;
    }
    process.stderr.write(`error: ${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }

  try {
    const set = loadFrames(args.input);
    const ref = args.reference ? loadFrames(args.reference) : undefined;
    const fr0 = set.frames[0];
    const stem = `${fr0.meta["problem"] ?? "run"}_${fr0.meta["mode"] ?? "run"}`;
    const ext = args.format;

    mkdirSync(args.out, { recursive: true });
    const panels = renderPanels(set, { kineticRef: ref });
    const timeline = renderRegimeTimeline(set);
    const emit = (name: string, svg: string) => {
      const body = ext === "html" ? wrapHtml(svg, name) : svg;
      const path = join(args.out, `${name}.${ext}`);
      writeFileSync(path, body);
      process.stdout.write(`wrote ${path}\n`);
    };
    emit(`${stem}_panels`, panels);
    emit(`${stem}_timeline`, timeline);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

function invokedDirectly(): boolean {
  if (process.argv[1] === undefined) return false;
  try {
    return fileURLToPath(import.meta.url) === realpathSync(process.argv[1]);
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  process.exit(runCli(process.argv.slice(2)));
}
