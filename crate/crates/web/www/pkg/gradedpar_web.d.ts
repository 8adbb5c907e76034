/* tslint:disable */
/* eslint-disable */

/**
 * Graded orbits in `g_degree` with dimensions and Levi blocks.
 */
export function graded_orbits(cochar: string, degree: number): string;

/**
 * Weight matrix and basis of `g_degree` for a cocharacter of `sl_d`, e.g. `"1,0,0,-1"`.
 */
export function grading(cochar: string, degree: number): string;

/**
 * Stalk table for `"sp4"` or `"sl4"` with coefficients of characteristic `l`.
 */
export function stalks(_case: string, l: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly graded_orbits: (a: number, b: number, c: number) => [number, number];
    readonly grading: (a: number, b: number, c: number) => [number, number];
    readonly stalks: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
