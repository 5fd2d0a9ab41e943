//! The reproduction checklist: the worked examples of order 3 and 4, their
//! duals and hat tables, the group partition and class census, plus the
//! law sweeps and the question scan.
//!
//! Items take the example tables from a [`Corpus`], so a damaged corpus makes
//! the affected items fail rather than silently using built-in copies.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use crate::compat::{are_compatible, dual_set, hat_op, DualMethod};
use crate::duality::{
    automorphisms, conjugate, count_group_structures, group_ops_with_identity, iso_classes,
    partition_group_ops,
};
use crate::enumerate::{count_ops, enumerate_ops, semigroups, ClassFilter, ScanOptions};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::explorer::{scan_question, ExploreOptions, ScanStatus};
use crate::io::{read_table, write_table, LabelMap};
use crate::laws::{exhaustive_sweep, sampled_sweep, sandwich_sweep, Law, LawReport};
use crate::perm::Permutation;
use crate::table::{CayleyTable, OpCode};

const BUNDLED_N3: [&str; 8] = [
    include_str!("../corpus/n3/z1.tbl"),
    include_str!("../corpus/n3/z2.tbl"),
    include_str!("../corpus/n3/z3.tbl"),
    include_str!("../corpus/n3/z4.tbl"),
    include_str!("../corpus/n3/z5.tbl"),
    include_str!("../corpus/n3/z6.tbl"),
    include_str!("../corpus/n3/z7.tbl"),
    include_str!("../corpus/n3/z8.tbl"),
];

const BUNDLED_N4: [&str; 4] = [
    include_str!("../corpus/n4/z1.tbl"),
    include_str!("../corpus/n4/z2.tbl"),
    include_str!("../corpus/n4/z3.tbl"),
    include_str!("../corpus/n4/z4.tbl"),
];

/// `HAT_Z1_Z3[x][i][j] = k` means `z_{i+1} ^x z_{j+1} = z_{k+1}` on the dual
/// of the cyclic group of order 3.
const HAT_Z1_Z3: [[[usize; 3]; 3]; 3] = [
    [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
    [[2, 0, 1], [0, 1, 2], [1, 2, 0]],
    [[1, 2, 0], [2, 0, 1], [0, 1, 2]],
];

/// The same for `{z4, z5, z6}`, indexed from `z4`.
const HAT_Z4_Z6: [[[usize; 3]; 3]; 3] = [
    [[0, 1, 2], [1, 0, 2], [2, 2, 2]],
    [[1, 0, 2], [0, 1, 2], [2, 2, 2]],
    [[2, 2, 2], [2, 2, 2], [2, 2, 2]],
];

/// Tables `z1..z8` of order 3 and `z1..z4` of order 4; any may be missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub n3: [Option<CayleyTable>; 8],
    pub n4: [Option<CayleyTable>; 4],
}

fn parse_corpus_table(text: &str, n: usize, name: &str) -> Result<CayleyTable> {
    let (t, labels) = read_table(text)?;
    if t.order() != n || labels != LabelMap::letters(n) {
        return Err(Error::Labels(format!("{name} must be of order {n} over letter labels")));
    }
    Ok(t)
}

impl Corpus {
    /// The tables compiled into the library.
    pub fn bundled() -> Self {
        let parse = |text: &str, n| parse_corpus_table(text, n, "bundled table").expect("bundled corpus parses");
        Corpus {
            n3: BUNDLED_N3.map(|t| Some(parse(t, 3))),
            n4: BUNDLED_N4.map(|t| Some(parse(t, 4))),
        }
    }

    /// Reads `n3/z1.tbl … n3/z8.tbl` and `n4/z1.tbl … n4/z4.tbl` under `dir`.
    /// Absent files leave gaps; malformed ones are errors.
    pub fn load(dir: &Path) -> Result<Self> {
        let read = |sub: &str, i: usize, n: usize| -> Result<Option<CayleyTable>> {
            let path = dir.join(sub).join(format!("z{i}.tbl"));
            match std::fs::read_to_string(&path) {
                Ok(text) => parse_corpus_table(&text, n, &path.display().to_string()).map(Some),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
                Err(e) => Err(Error::Labels(format!("cannot read {}: {e}", path.display()))),
            }
        };
        let mut corpus = Corpus {
            n3: Default::default(),
            n4: Default::default(),
        };
        for i in 0..8 {
            corpus.n3[i] = read("n3", i + 1, 3)?;
        }
        for i in 0..4 {
            corpus.n4[i] = read("n4", i + 1, 4)?;
        }
        Ok(corpus)
    }

    /// Writes the corpus in the layout [`Corpus::load`] reads.
    pub fn save(&self, dir: &Path) -> std::io::Result<()> {
        for (sub, tables) in [("n3", &self.n3[..]), ("n4", &self.n4[..])] {
            std::fs::create_dir_all(dir.join(sub))?;
            for (i, t) in tables.iter().enumerate() {
                if let Some(t) = t {
                    let text = write_table(t, &LabelMap::letters(t.order()));
                    std::fs::write(dir.join(sub).join(format!("z{}.tbl", i + 1)), text)?;
                }
            }
        }
        Ok(())
    }

    fn z3(&self, i: usize) -> Result<&CayleyTable> {
        self.n3[i - 1]
            .as_ref()
            .ok_or_else(|| Error::Verification(format!("order-3 table z{i} is missing")))
    }

    fn z4(&self, i: usize) -> Result<&CayleyTable> {
        self.n4[i - 1]
            .as_ref()
            .ok_or_else(|| Error::Verification(format!("order-4 table z{i} is missing")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Item {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
}

impl Item {
    pub const ALL: [Item; 10] = [
        Item::A1,
        Item::A2,
        Item::A3,
        Item::A4,
        Item::A5,
        Item::A6,
        Item::A7,
        Item::A8,
        Item::A9,
        Item::A10,
    ];

    pub fn title(self) -> &'static str {
        match self {
            Item::A1 => "order-3 census and group tables",
            Item::A2 => "dual of the cyclic group of order 3 and its hat tables",
            Item::A3 => "monoid duals of order 3 and the 81-element dual",
            Item::A4 => "incompatible members of a common dual",
            Item::A5 => "sandwich duality for all monoids of order <= 3",
            Item::A6 => "order-4 groups and their dual partition",
            Item::A7 => "isomorphism classes of order-4 groups",
            Item::A8 => "non-normal automorphism group",
            Item::A9 => "law sweeps (exhaustive n <= 3, sampled n = 4)",
            Item::A10 => "question scan for n = 2, 3",
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{self:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct ItemResult {
    pub item: Item,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for ItemResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4}{} {} ({:.2?}): {}",
            self.item,
            if self.passed { "PASS" } else { "FAIL" },
            self.item.title(),
            self.elapsed,
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct ChecklistOptions {
    pub exec: Exec,
    /// Random samples at order 4 for the law sweep.
    pub samples: usize,
    pub seed: u64,
    pub explore: ExploreOptions,
}

impl Default for ChecklistOptions {
    fn default() -> Self {
        ChecklistOptions {
            exec: Exec::default(),
            samples: 10_000,
            seed: 0x006d_6167_6d61,
            explore: ExploreOptions::default(),
        }
    }
}

/// Outcome of one item's body: `Ok(detail)` passes, `Err(reason)` fails.
type Check = std::result::Result<String, String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn codes(tables: &[&CayleyTable]) -> std::result::Result<BTreeSet<OpCode>, String> {
    tables.iter().map(|t| t.encode().map_err(err)).collect()
}

pub fn run_item(item: Item, corpus: &Corpus, options: &ChecklistOptions) -> ItemResult {
    let start = Instant::now();
    let outcome = match item {
        Item::A1 => a1(corpus, options),
        Item::A2 => a2(corpus),
        Item::A3 => a3(corpus),
        Item::A4 => a4(corpus),
        Item::A5 => a5(options),
        Item::A6 => a6(corpus),
        Item::A7 => a7(corpus),
        Item::A8 => a8(corpus),
        Item::A9 => a9(options),
        Item::A10 => a10(options),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    ItemResult {
        item,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_checklist(corpus: &Corpus, options: &ChecklistOptions) -> Vec<ItemResult> {
    Item::ALL.iter().map(|&i| run_item(i, corpus, options)).collect()
}

fn a1(corpus: &Corpus, options: &ChecklistOptions) -> Check {
    let scan = ScanOptions::with_exec(options.exec);
    let all = count_ops(3, ClassFilter::All, &scan).map_err(err)?;
    ensure(all.count == 19683, || format!("census saw {} tables", all.count))?;
    let found = std::sync::Mutex::new(Vec::new());
    enumerate_ops(3, ClassFilter::Gr, &scan, |c| found.lock().expect("lock").push(c)).map_err(err)?;
    let found: BTreeSet<OpCode> = found.into_inner().expect("lock").into_iter().collect();
    let listed = codes(&[corpus.z3(1).map_err(err)?, corpus.z3(2).map_err(err)?, corpus.z3(3).map_err(err)?])?;
    ensure(found == listed, || {
        format!("group codes {found:?} differ from z1, z2, z3 = {listed:?}")
    })?;
    Ok(format!("19683 tables, {} groups equal to z1, z2, z3", found.len()))
}

fn dual_codes(z: &CayleyTable, method: DualMethod) -> std::result::Result<BTreeSet<OpCode>, String> {
    Ok(dual_set(z, method).map_err(err)?.members.into_iter().collect())
}

fn hat_tables(tables: [&CayleyTable; 3], expected: &[[[usize; 3]; 3]; 3], names: [&str; 3]) -> Check {
    for (x, label) in ["a", "b", "c"].iter().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let got = hat_op(tables[i], x, tables[j]).map_err(err)?;
                let want = tables[expected[x][i][j]];
                ensure(got == *want, || {
                    format!("{} ^{label} {} is {got:?}, expected {}", names[i], names[j], names[expected[x][i][j]])
                })?;
            }
        }
    }
    Ok(String::new())
}

fn a2(corpus: &Corpus) -> Check {
    let z: Vec<&CayleyTable> = (1..=3).map(|i| corpus.z3(i)).collect::<Result<_>>().map_err(err)?;
    let expected = codes(&z)?;
    for (i, t) in z.iter().enumerate() {
        let d = dual_codes(t, DualMethod::Exhaustive)?;
        ensure(d == expected, || format!("dual of z{} is {d:?}", i + 1))?;
    }
    hat_tables([z[0], z[1], z[2]], &HAT_Z1_Z3, ["z1", "z2", "z3"])?;
    Ok("duals of z1, z2, z3 equal {z1, z2, z3}; hat tables match".into())
}

fn a3(corpus: &Corpus) -> Check {
    let z: Vec<&CayleyTable> = (1..=8).map(|i| corpus.z3(i)).collect::<Result<_>>().map_err(err)?;
    let (z4, z5, z6, z7, z8) = (z[3], z[4], z[5], z[6], z[7]);
    let want = codes(&[z4, z5, z6])?;
    let sandwich = dual_codes(z4, DualMethod::Sandwich)?;
    let exhaustive = dual_codes(z4, DualMethod::Exhaustive)?;
    ensure(sandwich == want && exhaustive == want, || {
        format!("dual of z4: sandwich {sandwich:?}, exhaustive {exhaustive:?}")
    })?;
    hat_tables([z4, z5, z6], &HAT_Z4_Z6, ["z4", "z5", "z6"])?;
    let d7 = dual_codes(z7, DualMethod::Exhaustive)?;
    ensure(d7 == codes(&[z7, z8, z6])?, || format!("dual of z7 is {d7:?}"))?;

    let d6 = dual_codes(z6, DualMethod::Exhaustive)?;
    // rows and columns at c are constant c, the a/b block is free
    let c = 2u8;
    let mut template = BTreeSet::new();
    for free in 0..81u32 {
        let mut e = vec![c; 9];
        let mut k = free;
        for (r, col) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            e[r * 3 + col] = (k % 3) as u8;
            k /= 3;
        }
        template.insert(CayleyTable::from_entries(3, e).map_err(err)?.encode().map_err(err)?);
    }
    ensure(d6.len() == 81 && d6 == template, || {
        format!("dual of z6 has {} members, template match {}", d6.len(), d6 == template)
    })?;
    Ok("dual(z4) = {z4,z5,z6} by sandwich and exhaustive, dual(z7) = {z7,z8,z6}, |dual(z6)| = 81 = template".into())
}

fn a4(corpus: &Corpus) -> Check {
    let (z4, z6, z7) = (
        corpus.z3(4).map_err(err)?,
        corpus.z3(6).map_err(err)?,
        corpus.z3(7).map_err(err)?,
    );
    let report = are_compatible(z4, z7).map_err(err)?;
    ensure(!report.compatible, || "z4 and z7 are compatible".into())?;
    let d6 = dual_codes(z6, DualMethod::Exhaustive)?;
    let d4 = dual_codes(z4, DualMethod::Exhaustive)?;
    ensure(d6.contains(&z4.encode().map_err(err)?) && d6.contains(&z7.encode().map_err(err)?), || {
        "z4 or z7 is missing from the dual of z6".into()
    })?;
    ensure(d4.is_subset(&d6) && d4 != d6, || "dual(z4) is not a proper subset of dual(z6)".into())?;
    let d7 = dual_codes(z7, DualMethod::Exhaustive)?;
    let shared: BTreeSet<OpCode> = d4.intersection(&d7).copied().collect();
    ensure(shared == codes(&[z6])?, || format!("dual(z4) ∩ dual(z7) = {shared:?}, expected {{z6}}"))?;
    let witness = match (report.failing_equation, report.witness) {
        (Some(eq), Some((a, b, c))) => format!("{eq} at ({a},{b},{c})"),
        _ => String::new(),
    };
    Ok(format!("z4, z7 incompatible ({witness}); dual(z4) ⊊ dual(z6); dual(z4) ∩ dual(z7) = {{z6}}"))
}

fn law_summary(report: &LawReport) -> Check {
    let mut parts = Vec::new();
    for o in &report.outcomes {
        if o.violations > 0 {
            return Err(format!(
                "{}: {} of {} cases violated, first: {}",
                o.law,
                o.violations,
                o.cases,
                o.first_violation.as_deref().unwrap_or("?")
            ));
        }
        parts.push(format!("{} {}", o.law, o.cases));
    }
    Ok(parts.join("; "))
}

fn a5(options: &ChecklistOptions) -> Check {
    let (monoids, report) = sandwich_sweep(3, options.exec).map_err(err)?;
    ensure(monoids == 1 + 4 + 33, || format!("{monoids} monoids of order <= 3"))?;
    let cases = report.get(Law::SandwichDuality).map_or(0, |o| o.cases);
    law_summary(&report)?;
    ensure(cases > 0, || "no cases checked".into())?;
    Ok(format!("{monoids} monoids, {cases} identities checked"))
}

fn a6(corpus: &Corpus) -> Check {
    let listed: Vec<&CayleyTable> = corpus.n4.iter().flatten().collect();
    let listed_codes = codes(&listed)?;
    let generated = group_ops_with_identity(4, 0).map_err(err)?;
    let generated_codes = codes(&generated.iter().collect::<Vec<_>>())?;
    ensure(generated_codes == listed_codes, || {
        format!(
            "groups with identity a: generated {}, corpus lists {}",
            generated_codes.len(),
            listed_codes.len()
        )
    })?;
    let report = partition_group_ops(4).map_err(err)?;
    ensure(report.blocks.len() == 4 && report.blocks.iter().all(|b| b.len() == 4), || {
        format!("partition has block sizes {:?}", report.blocks.iter().map(|b| b.len()).collect::<Vec<_>>())
    })?;
    // independent oracle: groups among all semigroups
    let all: BTreeSet<OpCode> = semigroups(4)
        .map_err(err)?
        .iter()
        .filter(|s| crate::classify::classify_op(s).gr)
        .map(|s| s.encode().map_err(err))
        .collect::<std::result::Result<_, _>>()?;
    let mut covered = BTreeSet::new();
    for t in &listed {
        for c in dual_codes(t, DualMethod::Sandwich)? {
            ensure(covered.insert(c), || format!("duals of the listed groups overlap at {c}"))?;
        }
    }
    ensure(covered == all && all.len() == 16 && report.total == 16, || {
        format!(
            "duals of the listed groups cover {} of {} group tables",
            covered.len(),
            all.len()
        )
    })?;
    Ok("4 groups with identity a; 4 disjoint duals of size 4 cover all 16 group tables".into())
}

fn a7(corpus: &Corpus) -> Check {
    let classes = iso_classes(4, 0).map_err(err)?;
    let mut sizes: Vec<(usize, usize)> = classes.iter().map(|c| (c.members.len(), c.aut_size)).collect();
    sizes.sort_unstable();
    ensure(sizes == [(1, 6), (3, 2)], || format!("class sizes and Aut orders {sizes:?}"))?;
    for (i, size) in [(1, 3), (4, 1)] {
        let z = corpus.z4(i).map_err(err)?;
        let class = classes.iter().find(|c| c.members.contains(z));
        ensure(class.is_some_and(|c| c.members.len() == size), || {
            format!("z{i} is not in a class of size {size}")
        })?;
    }
    let s3 = count_group_structures(3).map_err(err)?;
    let s4 = count_group_structures(4).map_err(err)?;
    ensure((s3, s4) == (1, 2), || format!("group structures: {s3} of order 3, {s4} of order 4"))?;
    Ok("classes of sizes 3 and 1 with Aut orders 2 and 6; 1 structure of order 3, 2 of order 4".into())
}

fn a8(corpus: &Corpus) -> Check {
    let (z1, z2, z3) = (
        corpus.z4(1).map_err(err)?,
        corpus.z4(2).map_err(err)?,
        corpus.z4(3).map_err(err)?,
    );
    let labels = LabelMap::letters(4);
    let sigma = Permutation::parse("b<->c", &labels).map_err(err)?;
    let tau0 = Permutation::parse("b<->d", &labels).map_err(err)?;
    let aut = automorphisms(z1);
    ensure(aut.contains(&tau0), || "(b d) is not an automorphism of z1".into())?;
    let image = conjugate(z1, &tau0.compose(&sigma)).map_err(err)?;
    ensure(image == *z3, || format!("z1 conjugated by (b d)(b c) is {image:?}"))?;
    for tau in &aut {
        let image = conjugate(z1, &sigma.compose(tau)).map_err(err)?;
        ensure(image == *z2, || {
            format!("z1 conjugated by (b c)∘{} is {image:?}", tau.to_cycle_string(&labels))
        })?;
    }
    let left: BTreeSet<Permutation> = aut.iter().map(|t| sigma.compose(t)).collect();
    let right: BTreeSet<Permutation> = aut.iter().map(|t| t.compose(&sigma)).collect();
    ensure(left != right, || "left and right cosets coincide".into())?;
    Ok(format!("|Aut(z1)| = {}; σ·Aut ≠ Aut·σ", aut.len()))
}

fn a9(options: &ChecklistOptions) -> Check {
    let mut report = LawReport::default();
    for n in 1..=3 {
        report.merge(exhaustive_sweep(n, options.exec).map_err(err)?);
    }
    let exhaustive = law_summary(&report)?;
    let sampled = sampled_sweep(4, options.samples, options.seed, options.exec).map_err(err)?;
    let sampled_detail = law_summary(&sampled)?;
    for law in [
        Law::CatalystInclusion,
        Law::PairwiseCompatible,
        Law::HatClosure,
        Law::DualMultiAssociativity,
        Law::GroupDualsDisjointOrEqual,
        Law::HatCheckAgreement,
        Law::ConjugationAction,
        Law::BacktrackMatchesExhaustive,
    ] {
        for (scope, r) in [("n <= 3", &report), ("n = 4", &sampled)] {
            ensure(r.get(law).is_some_and(|o| o.cases > 0), || format!("{law}: no cases at {scope}"))?;
        }
    }
    Ok(format!(
        "n <= 3: {exhaustive} | n = 4, {} samples: {sampled_detail}",
        options.samples
    ))
}

fn a10(options: &ChecklistOptions) -> Check {
    let explore = ExploreOptions {
        exec: options.exec,
        ..options.explore
    };
    let mut lines = Vec::new();
    for n in [2, 3] {
        let r = scan_question(n, &explore).map_err(err)?;
        ensure(r.status == ScanStatus::Complete, || format!("scan at n = {n} is partial"))?;
        let witness = |t: Option<&OpCode>| t.map_or(String::new(), |c| format!(", e.g. {:?}", c.decode()));
        lines.push(format!(
            "n = {n}: part 1 {} ({} uncovered{}), part 2 {} ({} failures{})",
            if r.part1_holds() { "holds" } else { "fails" },
            r.part1_missing.len(),
            witness(r.part1_missing.first()),
            if r.part2_holds() { "holds" } else { "fails" },
            r.part2_failures.len(),
            witness(r.part2_failures.first()),
        ));
    }
    Ok(lines.join("; "))
}
