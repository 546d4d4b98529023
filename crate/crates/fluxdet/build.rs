fn main() {
    // Dense symmetric/Hermitian eigensolvers come from the system LAPACK
    // (provided by OpenBLAS on the target image). Only three routines are
    // used, declared by hand in `src/linalg.rs`.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
