/**
 * Typed wrappers around the `propeval` command.
 *
 * Every call spawns one CLI process and communicates only through file
 * paths, flags, and stdout, so the wrapper survives core-library changes
 * that keep those interfaces stable. Numbers are parsed from the CLI's
 * own JSON and are therefore bit-identical to what the CLI reports.
 *
 * The module holds no mutable state; concurrent calls each get their own
 * child process. Set PROPEVAL_BIN to override how the CLI is launched
 * (e.g. "python3 -m propeval.cli").
 */

import { execFile } from "node:child_process";

/** Raised when the CLI rejects the inputs (exit code 1): validation
 * findings, mismatched prediction keys, degenerate training data. */
export class ValidationError extends Error {
  override name = "ValidationError";
}

/** Raised when a file is missing or malformed (exit code 2). */
export class InputError extends Error {
  override name = "InputError";
}

/** Raised on bad arguments such as an unknown convention or vote method
 * (exit code 3). */
export class UsageError extends Error {
  override name = "UsageError";
}

export interface SiResult {
  precision: number;
  recall: number;
  f1: number;
  convention: string;
}

export interface ClassCounts {
  tp: number;
  fp: number;
  fn: number;
  f1: number;
}

export interface TcResult {
  micro_f1: number;
  matched: number;
  total: number;
  per_class: Record<string, ClassCounts>;
}

export type SiConvention = "corrected" | "literal-paper";
export type CombineMethod = "union" | "intersection" | "majority";

export interface CombineOptions {
  /** "si" (default) or "tc". */
  task?: "si" | "tc";
  /** Articles directory; required by the CLI for SI combination. */
  articlesDir?: string;
  /** TC gold file used as the tie-break prior; required for TC. */
  trainPath?: string;
}

function cliCommand(): string[] {
  const raw = process.env.PROPEVAL_BIN ?? "propeval";
  const parts = raw.split(" ").filter((p) => p.length > 0);
  if (parts.length === 0) {
    throw new UsageError("PROPEVAL_BIN is set but empty");
  }
  return parts;
}

function classify(code: number, stderr: string): Error {
  const text = stderr.trim() || `propeval exited with code ${code}`;
  if (code === 1) return new ValidationError(text);
  if (code === 2) return new InputError(text);
  if (code === 3) return new UsageError(text);
  return new Error(text);
}

function runCli(args: string[]): Promise<string> {
  const [bin, ...prefix] = cliCommand();
  return new Promise((resolve, reject) => {
    execFile(
      bin,
      [...prefix, ...args],
      { encoding: "utf8", maxBuffer: 64 * 1024 * 1024 },
      (error, stdout, stderr) => {
        if (error === null) {
          resolve(stdout);
          return;
        }
        const code = typeof error.code === "number" ? error.code : -1;
        if (code > 0) {
          reject(classify(code, stderr));
        } else {
          reject(new Error(`failed to launch ${bin}: ${error.message}`));
        }
      },
    );
  });
}

/** Score a span-identification prediction file against gold. */
export async function scoreSiFiles(
  articlesDir: string,
  goldPath: string,
  predPath: string,
  convention: SiConvention | string = "corrected",
): Promise<SiResult> {
  const stdout = await runCli([
    "score-si",
    "--articles",
    articlesDir,
    "--gold",
    goldPath,
    "--pred",
    predPath,
    "--eq-convention",
    convention,
    "--format",
    "json",
  ]);
  return JSON.parse(stdout) as SiResult;
}

/** Score a technique-classification prediction file against gold. */
export async function scoreTcFiles(
  goldPath: string,
  predPath: string,
): Promise<TcResult> {
  const stdout = await runCli([
    "score-tc",
    "--gold",
    goldPath,
    "--pred",
    predPath,
    "--format",
    "json",
  ]);
  return JSON.parse(stdout) as TcResult;
}

/**
 * Combine system output files under a vote rule and write the result to
 * outPath in the standard annotation format.
 */
export async function combineFiles(
  predPaths: string[],
  method: CombineMethod | string,
  outPath: string,
  options: CombineOptions = {},
): Promise<void> {
  const task = options.task ?? "si";
  const args = ["combine", "--task", task, "--method", method, "--out", outPath];
  if (options.articlesDir !== undefined) {
    args.push("--articles", options.articlesDir);
  }
  if (options.trainPath !== undefined) {
    args.push("--train", options.trainPath);
  }
  if (predPaths.length === 0) {
    throw new UsageError("combineFiles needs at least one prediction file");
  }
  args.push("--pred", ...predPaths);
  await runCli(args);
}

/** Version of the underlying core, from `propeval --version`. */
export async function version(): Promise<string> {
  const stdout = await runCli(["--version"]);
  return stdout.trim();
}
