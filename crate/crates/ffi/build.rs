//! Generates `include/stirlab.h` from the public `extern "C"` surface so
//! the committed header can never drift from the code.

use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("cargo sets this"));
    let header = crate_dir.join("include").join("stirlab.h");

    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("STIRLAB_H".to_string()),
        cpp_compat: true,
        documentation: true,
        documentation_style: cbindgen::DocumentationStyle::C99,
        header: Some(
            "/* C interface to the stirlab exact-combinatorics toolkit.\n\
             \x20* Generated by the build script — do not edit by hand. */"
                .to_string(),
        ),
        usize_is_size_t: true,
        enumeration: cbindgen::EnumConfig {
            // C sees StirlabStatus_Ok, not a bare Ok.
            prefix_with_name: true,
            ..cbindgen::EnumConfig::default()
        },
        ..cbindgen::Config::default()
    };

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("the C interface is representable as a C header")
        .write_to_file(&header);

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=build.rs");
}
