use std::path::{Path, PathBuf};

use proptest::prelude::*;

use slackhopf_cli::commands::{self, QuasiAction, SlackAction};
use slackhopf_cli::format::{AlgebraFile, AntipodeFile, CategoryFile, MonoidFile, Sparse, TensorFile};
use slackhopf_cli::Report;
use slackhopf_core::exactlin::{Field, TensorElement};
use slackhopf_core::fixtures;

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(examples_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

#[test]
fn every_example_round_trips() {
    let files = example_files();
    assert!(files.len() >= 12);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let ok = match path.extension().and_then(|e| e.to_str()).unwrap() {
            "alg" => {
                let f = AlgebraFile::parse(&text).unwrap();
                AlgebraFile::parse(&f.to_text()).unwrap() == f
            }
            "v" => {
                let f = TensorFile::parse(&text).unwrap();
                TensorFile::parse(&f.to_text()).unwrap() == f
            }
            "qa" => {
                let f = AntipodeFile::parse(&text).unwrap();
                AntipodeFile::parse(&f.to_text()).unwrap() == f
            }
            "cat" => {
                let f = CategoryFile::parse(&text).unwrap();
                CategoryFile::parse(&f.to_text()).unwrap() == f
            }
            "mon" => {
                let f = MonoidFile::parse(&text).unwrap();
                MonoidFile::parse(&f.to_text()).unwrap() == f
            }
            other => panic!("unexpected example kind {other}"),
        };
        assert!(ok, "{}", path.display());
    }
}

fn load(name: &str) -> AlgebraFile {
    AlgebraFile::parse(&std::fs::read_to_string(examples_dir().join(name)).unwrap()).unwrap()
}

#[test]
fn example_algebras_match_library_fixtures() {
    let q = Field::Rationals;
    assert_eq!(load("kz2.alg").comagma().unwrap(), fixtures::group_algebra_cyclic(q, 2));
    assert_eq!(load("m2_flip.alg").comagma().unwrap(), fixtures::m2_flip_comagma(q));
    assert_eq!(
        load("gf2_idempotent_monoid.alg").comagma().unwrap().delta(),
        fixtures::idempotent_monoid_algebra(Field::Prime(2)).delta()
    );
    let quasi = load("kz2_quasi.alg");
    let fixture = fixtures::kz2_quasi(q);
    assert_eq!(quasi.comagma().unwrap(), fixture.comagma);
    assert_eq!(quasi.phi.unwrap().to_tensor(q, 2), fixture.phi);
    assert_eq!(quasi.phi_inv.unwrap().to_tensor(q, 2), fixture.phi_inv);
}

fn write_certificate(dir: &Path, r: &Report, name: &str) -> PathBuf {
    let c = r.certificates.iter().find(|c| c.name == name).unwrap();
    let path = dir.join(format!("{name}.v"));
    std::fs::write(&path, &c.text).unwrap();
    path
}

/// Reloads `v` from the report and recomputes every certificate from it.
fn recheck(alg: &Path, r: &Report) {
    for c in &r.certificates {
        let reparsed = TensorFile::parse(&c.text).unwrap();
        assert_eq!(reparsed.to_text(), c.text, "{}", c.name);
    }
    let dir = tempfile::tempdir().unwrap();
    let v = write_certificate(dir.path(), r, "v");
    let again = commands::slack(alg, &SlackAction::Check(v)).unwrap();
    assert_eq!(again.verdict, "Certificate");
    for c in &r.certificates {
        let twin = again.certificates.iter().find(|d| d.name == c.name).unwrap();
        assert_eq!(twin.text, c.text, "{}", c.name);
    }
}

#[test]
fn slack_certificates_revalidate_on_reload() {
    let dir = examples_dir();
    let kz2 = dir.join("kz2.alg");
    let r = commands::slack(&kz2, &SlackAction::Check(dir.join("kz2_gg.v"))).unwrap();
    recheck(&kz2, &r);
    let m2 = dir.join("m2_flip.alg");
    let r = commands::slack(
        &m2,
        &SlackAction::Find(commands::FindMode::Randomized { seed: 7, trials: 100 }),
    )
    .unwrap();
    assert_eq!(r.verdict, "Found");
    recheck(&m2, &r);
}

#[test]
fn decomposition_certificates_revalidate_on_reload() {
    let dir = examples_dir();
    let kz2 = dir.join("kz2.alg");
    let r = commands::quasi(&kz2, &QuasiAction::Classify(dir.join("kz2_gg.v"))).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    // v₀ is left Hopf and v₀ classifies with the emitted quasi-antipode
    let v0 = write_certificate(tmp.path(), &r, "v0");
    let back = commands::quasi(&kz2, &QuasiAction::Classify(v0)).unwrap();
    assert_eq!(back.verdict, "LeftHopf");
    let cert = |rep: &Report, name: &str| rep.certificates.iter().find(|c| c.name == name).unwrap().text.clone();
    assert_eq!(cert(&back, "antipode"), cert(&r, "v0_antipode"));
    assert_eq!(cert(&back, "a"), cert(&r, "v0_a"));
    assert_eq!(cert(&back, "b"), cert(&r, "v0_b"));
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(5))]
}

proptest! {
    #[test]
    fn tensors_round_trip_through_text(
        field in field_strategy(),
        dim in 1usize..4,
        rank in 0usize..4,
        raw in proptest::collection::vec((-9i64..10, 1i64..5), 64),
    ) {
        let size = dim.pow(rank as u32);
        let coeffs = (0..size)
            .map(|i| {
                let (n, d) = raw[i % raw.len()];
                if i % 3 == 0 { field.zero() } else { field.from_ratio(n, d).unwrap_or(field.zero()) }
            })
            .collect();
        let t = TensorElement::from_coeffs(field, rank, dim, coeffs).unwrap();
        let file = TensorFile::from_tensor(&t);
        let back = TensorFile::parse(&file.to_text()).unwrap();
        prop_assert_eq!(back.tensor(), t);
    }

    #[test]
    fn maps_round_trip_through_sparse_entries(
        dim in 1usize..4,
        out_rank in 1usize..3,
        raw in proptest::collection::vec(-5i64..6, 81),
    ) {
        let f = Field::Rationals;
        let rows = dim.pow(out_rank as u32);
        let m = slackhopf_core::exactlin::LinearMap::from_fn(f, rows, dim, |i, j| f.from_i64(raw[(i * dim + j) % raw.len()]));
        let s = Sparse::from_map(&m, out_rank, dim);
        prop_assert_eq!(s.to_map(f, dim), m);
    }
}
