fn main() {
    // Symmetric eigendecomposition goes through the system LAPACK that ships
    // inside OpenBLAS (dsyevd). Override the library name if yours differs.
    let lib = std::env::var("LOGIT_PFA_BLAS_LIB").unwrap_or_else(|_| "openblas".to_string());
    println!("cargo:rustc-link-lib=dylib={lib}");
    println!("cargo:rerun-if-env-changed=LOGIT_PFA_BLAS_LIB");
}
