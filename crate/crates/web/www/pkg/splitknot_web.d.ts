/* tslint:disable */
/* eslint-disable */

/**
 * Pairwise coprimality of the summands' Alexander polynomials.
 */
export function coprimality(expr: string): string;

/**
 * Names in the bundled corpus.
 */
export function corpus_names(): string;

/**
 * Cover homology, pairing grid, deck action and metabolizers.
 */
export function cover_summary(input: string, q: number, lambda: boolean): string;

/**
 * Correction terms of L(p, q) for every spin^c index.
 */
export function lens_table(p: number, q: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly coprimality: (a: number, b: number) => [number, number];
    readonly corpus_names: () => [number, number];
    readonly cover_summary: (a: number, b: number, c: number, d: number) => [number, number];
    readonly lens_table: (a: number, b: number) => [number, number];
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
