use endotriv::cli::{corpus_run, load_corpus, parse_filter};

fn main() {
    let entries = load_corpus(None).unwrap();
    let filter = parse_filter(&["family=sl3-char3".to_string()]).unwrap();
    let rep = corpus_run(&entries, &filter, 200_000, true);
    for e in &rep.entries {
        println!("{} {:<24} {}", e.status(), e.id, e.got);
    }
    println!("{} passed, {} failed", rep.passed, rep.failed);
}
