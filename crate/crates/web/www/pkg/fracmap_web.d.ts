/* tslint:disable */
/* eslint-disable */

/**
 * Orbit histogram next to the analytic density.
 */
export class DensityPlot {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly analytic: Float64Array;
    /**
     * Period of the orbit, 0 when it is not periodic.
     */
    readonly atomic_period: number;
    readonly centers: Float64Array;
    readonly empirical: Float64Array;
    readonly ks_distance: number;
}

/**
 * One eigenfunction on a grid, with its envelope and eigenvalue.
 */
export class EigenPlot {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Where the phase jumps by a multiple of 2 pi.
     */
    readonly discontinuity: number;
    readonly eigenvalue_arg: number;
    /**
     * The invariant Lorentzian, which is `|sigma_n|`.
     */
    readonly envelope: Float64Array;
    readonly im: Float64Array;
    /**
     * Largest `|P sigma_n - lambda_n sigma_n|` on the grid.
     */
    readonly max_residual: number;
    readonly re: Float64Array;
    readonly x: Float64Array;
}

/**
 * A function and its truncated eigenfunction expansion.
 */
export class ExpansionPlot {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `|C_n|` for `n = -n_max..=n_max`.
     */
    readonly coefficient_moduli: Float64Array;
    readonly l1_error: number;
    /**
     * Real part of the reconstruction.
     */
    readonly reconstruction: Float64Array;
    /**
     * Real part of the function.
     */
    readonly target: Float64Array;
    readonly x: Float64Array;
}

export function density(u: number, x0: number, n: number, bins: number, lo: number, hi: number): DensityPlot;

export function eigen(u: number, n: number, lo: number, hi: number, points: number): EigenPlot;

export function expand(u: number, _function: string, n_max: number, lo: number, hi: number, points: number): ExpansionPlot;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_densityplot_free: (a: number, b: number) => void;
    readonly __wbg_eigenplot_free: (a: number, b: number) => void;
    readonly __wbg_expansionplot_free: (a: number, b: number) => void;
    readonly density: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly densityplot_analytic: (a: number) => [number, number];
    readonly densityplot_atomic_period: (a: number) => number;
    readonly densityplot_centers: (a: number) => [number, number];
    readonly densityplot_empirical: (a: number) => [number, number];
    readonly densityplot_ks_distance: (a: number) => number;
    readonly eigen: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly eigenplot_discontinuity: (a: number) => number;
    readonly eigenplot_eigenvalue_arg: (a: number) => number;
    readonly eigenplot_envelope: (a: number) => [number, number];
    readonly eigenplot_im: (a: number) => [number, number];
    readonly eigenplot_max_residual: (a: number) => number;
    readonly eigenplot_re: (a: number) => [number, number];
    readonly eigenplot_x: (a: number) => [number, number];
    readonly expand: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly expansionplot_coefficient_moduli: (a: number) => [number, number];
    readonly expansionplot_l1_error: (a: number) => number;
    readonly expansionplot_reconstruction: (a: number) => [number, number];
    readonly expansionplot_target: (a: number) => [number, number];
    readonly expansionplot_x: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
