use std::path::PathBuf;

use truthkernel::kernel::Certificate;
use truthkernel::script::{parse_script, Expander};
use truthkernel::theorems::{bundles, Session};

fn scripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts")
}

/// Set `UPDATE_SCRIPTS=1` to rewrite the files under scripts/.
#[test]
fn bundled_scripts_are_current_and_recheck() {
    let update = std::env::var_os("UPDATE_SCRIPTS").is_some();
    for bundle in bundles().unwrap() {
        let text = bundle.render();
        let path = scripts_dir().join(bundle.file_name());
        if update {
            std::fs::write(&path, &text).unwrap();
        } else {
            let on_disk =
                std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert!(on_disk == text, "{} is stale; rerun with UPDATE_SCRIPTS=1", path.display());
        }

        let mut session = Session::new(bundle.theory.clone());
        let mut expander = Expander::new();
        let direct: Vec<Certificate> = bundle
            .theorems
            .iter()
            .map(|t| {
                let pf = expander.expand(&t.script).unwrap();
                session.check_proof(&pf.proof).unwrap().certificate()
            })
            .collect();

        let parsed = parse_script(&text).unwrap();
        assert_eq!(parsed.theory.as_ref(), Some(&bundle.theory));
        let mut fresh = Session::new(bundle.theory.clone());
        let rechecked: Vec<Certificate> = fresh
            .check_file(&parsed)
            .unwrap_or_else(|e| panic!("{}: {e}", bundle.name))
            .into_iter()
            .map(|(_, thm)| thm.certificate())
            .collect();
        assert_eq!(direct, rechecked, "{}", bundle.name);
    }
}
