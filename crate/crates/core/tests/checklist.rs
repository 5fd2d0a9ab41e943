use magma_dual::checklist::{run_item, ChecklistOptions, Corpus, Item};
use magma_dual::{CayleyTable, Exec};

fn options() -> ChecklistOptions {
    ChecklistOptions {
        exec: Exec::default(),
        samples: 50,
        ..ChecklistOptions::default()
    }
}

#[test]
fn corrupted_group_table_fails_the_census_item() {
    let mut corpus = Corpus::bundled();
    let z1 = corpus.n3[0].as_ref().unwrap();
    let mut entries = z1.entries().to_vec();
    // (b, b) := a
    entries[3 + 1] = 0;
    corpus.n3[0] = Some(CayleyTable::from_entries(3, entries).unwrap());
    let r = run_item(Item::A1, &corpus, &options());
    assert!(!r.passed, "{r}");
    assert!(run_item(Item::A1, &Corpus::bundled(), &options()).passed);
}

#[test]
fn removing_the_klein_group_fails_the_partition_item() {
    let mut corpus = Corpus::bundled();
    corpus.n4[3] = None;
    let r = run_item(Item::A6, &corpus, &options());
    assert!(!r.passed, "{r}");
}

#[test]
fn corpus_directory_with_a_gap_fails_the_partition_item() {
    let dir = tempdir();
    Corpus::bundled().save(&dir).unwrap();
    std::fs::remove_file(dir.join("n4").join("z4.tbl")).unwrap();
    let corpus = Corpus::load(&dir).unwrap();
    assert!(!run_item(Item::A6, &corpus, &options()).passed);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn swapped_tables_fail_the_dual_items() {
    let mut corpus = Corpus::bundled();
    corpus.n3.swap(4, 6);
    assert!(!run_item(Item::A3, &corpus, &options()).passed);
    let mut corpus = Corpus::bundled();
    corpus.n4.swap(1, 2);
    assert!(!run_item(Item::A8, &corpus, &options()).passed);
}

#[test]
fn result_lines_name_item_and_verdict() {
    let r = run_item(Item::A7, &Corpus::bundled(), &options());
    let line = r.to_string();
    assert!(line.starts_with("A7  PASS"), "{line}");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("magma-checklist-{}-{:?}", std::process::id(), std::thread::current().id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}
