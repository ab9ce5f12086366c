/* tslint:disable */
/* eslint-disable */

/**
 * A random real configuration as `{svg, scenario, status, report}`.
 *
 * `kind` is `ellipse`, `hyperbola` or `parabola` for the planar theorem,
 * or `projective` for the projective one drawn on an ellipse.
 */
export function random_figure(kind: string, seed: bigint): string;

/**
 * Runs a scenario document: `{status, exit_code, report, svg?}`. The
 * figure is drawn for the first check when the scenario is real.
 */
export function verify_scenario(text: string): string;

/**
 * Transcript of the worked example on `xy + xz − 2yz = 0`.
 */
export function worked_example_transcript(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly random_figure: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly verify_scenario: (a: number, b: number) => [number, number];
    readonly worked_example_transcript: () => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
