/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const analyze_catalog: (a: number, b: number) => [number, number];
export const analyze_presentation: (a: number, b: number) => [number, number];
export const hasse_layout: (a: number, b: number) => [number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
