//! Reproduction checklist, one line per item. Runs without the libtest
//! harness so the lines come out in order.
//!
//! `MAGMA_ACCEPTANCE_SAMPLES` overrides the number of order-4 samples (the
//! default, and the minimum the checklist is specified with, is 10000).

use std::process::ExitCode;
use std::time::Duration;

use magma_dual::checklist::{run_item, ChecklistOptions, Corpus, Item};

fn bound(item: Item) -> Duration {
    let secs = match item {
        Item::A1 => 1,
        Item::A2 => 5,
        Item::A3 => 10,
        Item::A5 | Item::A10 => 120,
        Item::A6 => 30,
        Item::A9 => 300,
        Item::A4 | Item::A7 | Item::A8 => 30,
    };
    Duration::from_secs(secs)
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored; a filter
    // argument restricts the run to matching item ids
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut options = ChecklistOptions::default();
    if let Some(s) = std::env::var("MAGMA_ACCEPTANCE_SAMPLES").ok().and_then(|v| v.parse().ok()) {
        options.samples = s;
    }
    let corpus = Corpus::bundled();
    let mut failed = 0;
    let mut ran = 0;
    for item in Item::ALL {
        let id = item.to_string();
        if !filters.is_empty() && !filters.iter().any(|f| id.eq_ignore_ascii_case(f)) {
            continue;
        }
        ran += 1;
        let mut r = run_item(item, &corpus, &options);
        if r.passed && r.elapsed > bound(item) {
            r.passed = false;
            r.detail = format!("exceeded {:?}; {}", bound(item), r.detail);
        }
        if !r.passed {
            failed += 1;
        }
        println!("{r}");
    }
    println!("acceptance: {} of {ran} passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
