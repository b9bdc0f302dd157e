//! Regenerates docs/method_catalog.md from the catalog tables.

fn main() {
    let text = stfem::catalog::render_catalog();
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/method_catalog.md");
    std::fs::write(&path, text).expect("write catalog");
    eprintln!("wrote {}", path.display());
}
