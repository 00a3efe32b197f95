//! Regenerates `corpus/relations.json` from the builders.

use cremona::relations::{build_corpus, corpus_to_json, holds_in_group, phi_respects};

fn main() {
    let corpus = build_corpus().expect("corpus builds");
    for r in &corpus {
        let ok = holds_in_group(r).expect("evaluable") && phi_respects(r).expect("phi evaluable");
        eprintln!("{:<5} {} {}", if ok { "ok" } else { "FAIL" }, r.label, r.lhs.len());
        assert!(ok, "{} does not hold", r.label);
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/relations.json");
    let text = serde_json::to_string_pretty(&corpus_to_json(&corpus)).expect("serializable") + "\n";
    std::fs::write(path, text).expect("writable corpus file");
    eprintln!("wrote {} instances to {path}", corpus.len());
}
