/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_densityplot_free: (a: number, b: number) => void;
export const __wbg_eigenplot_free: (a: number, b: number) => void;
export const __wbg_expansionplot_free: (a: number, b: number) => void;
export const density: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const densityplot_analytic: (a: number) => [number, number];
export const densityplot_atomic_period: (a: number) => number;
export const densityplot_centers: (a: number) => [number, number];
export const densityplot_empirical: (a: number) => [number, number];
export const densityplot_ks_distance: (a: number) => number;
export const eigen: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const eigenplot_discontinuity: (a: number) => number;
export const eigenplot_eigenvalue_arg: (a: number) => number;
export const eigenplot_envelope: (a: number) => [number, number];
export const eigenplot_im: (a: number) => [number, number];
export const eigenplot_max_residual: (a: number) => number;
export const eigenplot_re: (a: number) => [number, number];
export const eigenplot_x: (a: number) => [number, number];
export const expand: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const expansionplot_coefficient_moduli: (a: number) => [number, number];
export const expansionplot_l1_error: (a: number) => number;
export const expansionplot_reconstruction: (a: number) => [number, number];
export const expansionplot_target: (a: number) => [number, number];
export const expansionplot_x: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
