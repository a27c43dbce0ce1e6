mod common;

use kummer_torsion::arith::Rat;
use kummer_torsion::jacobian::HyperellipticCurveQ;
use kummer_torsion::pack::{
    pack_checksum, parse_pack, serialize_pack, validate_pack, Coeff, PackBackend, TableKind, TrustedCache, ValidatedPack,
};
use kummer_torsion::torsion::{full_torsion, EllipticBackend, TorsionConfig};
use kummer_torsion::Error;
use proptest::prelude::*;

const XLINE: &str = include_str!("../../../packs/genus1-xline.pack");

fn parse_err(text: &str) -> (usize, usize, String) {
    match parse_pack(text) {
        Err(Error::PackParse { line, col, msg }) => (line, col, msg),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn xline_pack_round_trips() {
    let p = parse_pack(XLINE).unwrap();
    assert_eq!(p.genus, 1);
    let text = serialize_pack(&p);
    let q = parse_pack(&text).unwrap();
    assert_eq!(p, q);
    assert_eq!(serialize_pack(&q), text);
    assert_eq!(pack_checksum(&p), pack_checksum(&q));
    assert_eq!(pack_checksum(&p).len(), 64);
}

#[test]
fn stub_pack_grammar() {
    let stub = "pack genus=1\n[table delta vars=2 count=2]\n{\n1 4 0\n}\n{\n1/2 0 4\n}\n";
    let p = parse_pack(stub).unwrap();
    assert_eq!(p.identity, vec![Rat::from_integer(0.into()), Rat::from_integer(1.into())]);
    let d = p.table(TableKind::Delta).unwrap();
    assert_eq!(d.polys.len(), 2);
    assert_eq!(d.polys[1].terms[0].coeff, Coeff::Const(Rat::new(1.into(), 2.into())));
    assert_eq!(parse_pack(&serialize_pack(&p)).unwrap(), p);
}

#[test]
fn comments_and_whitespace_do_not_change_the_checksum() {
    let a = parse_pack(XLINE).unwrap();
    let noisy = XLINE.replace("\n{", "\n   {   # open").replace("pack genus=1", "# header\npack   genus=1");
    let b = parse_pack(&noisy).unwrap();
    assert_eq!(pack_checksum(&a), pack_checksum(&b));
}

#[test]
fn arity_error_reports_position() {
    let text = "pack genus=1\n[table delta vars=2 count=2]\n{\n1 4 0 0\n}\n{\n1 0 4\n}\n";
    let (line, col, msg) = parse_err(text);
    assert_eq!((line, col), (4, 7));
    assert!(msg.contains("expected 2 exponents"), "{msg}");
}

#[test]
fn coefficient_block_arity() {
    let text = "pack genus=1\n[table delta vars=2 count=2]\n{\ncoeff{\n1 0 1\n} 4 0\n}\n{\n1 0 4\n}\n";
    let (line, _, msg) = parse_err(text);
    assert_eq!(line, 5);
    assert!(msg.contains("expected 5 exponents"), "{msg}");
}

#[test]
fn non_homogeneous_polynomial_rejected() {
    let text = "pack genus=1\n[table delta vars=2 count=2]\n{\n1 4 0\n1 3 0\n}\n{\n1 0 4\n}\n";
    let (_, _, msg) = parse_err(text);
    assert!(msg.contains("not homogeneous"), "{msg}");
}

#[test]
fn duplicate_and_unknown_tables_rejected() {
    let base = "pack genus=1\n[table delta vars=2 count=2]\n{\n1 4 0\n}\n{\n1 0 4\n}\n";
    let dup = format!("{base}{}", &base["pack genus=1\n".len()..]);
    let (line, _, msg) = parse_err(&dup);
    assert_eq!(line, 9);
    assert!(msg.contains("duplicate"), "{msg}");
    let unknown = format!("{base}[table gamma vars=2 count=1]\n{{\n1 1 0\n}}\n");
    let (line, col, msg) = parse_err(&unknown);
    assert_eq!((line, col), (9, 8));
    assert!(msg.contains("unknown table"), "{msg}");
}

#[test]
fn shape_errors() {
    let (_, _, msg) = parse_err("pack genus=2\n[table delta vars=3 count=4]\n");
    assert!(msg.contains("vars=4"), "{msg}");
    let (_, _, msg) = parse_err("pack genus=1\n[table xi vars=2 count=2]\n{\n1 0 0\n}\n{\n1 0 0\n}\n");
    assert!(msg.contains("no `delta`"), "{msg}");
    let (line, _, msg) = parse_err("pack genus=1\n[table delta vars=2 count=2]\n{\n1 4 0\n}\n");
    assert_eq!(line, 5);
    assert!(msg.contains("end of pack"), "{msg}");
    let (line, col, _) = parse_err("pack genus=1\n[table delta vars=2 count=2]\n{\n1 x 0\n}\n");
    assert_eq!((line, col), (4, 3));
}

#[test]
fn xline_pack_validates() {
    let p = parse_pack(XLINE).unwrap();
    let r = validate_pack(&p, 20, 1);
    assert!(r.passed(), "{r:#?}");
    assert!(r.warnings.is_empty());
    assert_eq!(r.check('b').unwrap().runs, 20);
    assert_eq!(r.check('c').unwrap().runs, 20);
    assert!(r.check('d').unwrap().runs >= 20);
    assert!(!r.check('a').unwrap().applicable);
    assert!(!r.check('e').unwrap().applicable);
}

#[test]
fn perturbed_doubling_fails_check_b() {
    let mut p = parse_pack(XLINE).unwrap();
    let delta = p.table_mut(TableKind::Delta).unwrap();
    delta.polys[1].terms[0].coeff = Coeff::Const(Rat::from_integer(5.into()));
    let r = validate_pack(&p, 20, 1);
    assert!(!r.passed());
    let b = r.check('b').unwrap();
    assert!(!b.passed && b.failures > 0, "{b:?}");
    assert!(b.first_failure.is_some());
}

#[test]
fn perturbed_pseudo_addition_fails_check_c() {
    let mut p = parse_pack(XLINE).unwrap();
    let bqf = p.table_mut(TableKind::Bqf).unwrap();
    bqf.polys[2].terms[1].coeff = Coeff::Const(Rat::from_integer((-3).into()));
    let r = validate_pack(&p, 12, 3);
    assert!(!r.check('c').unwrap().passed);
}

#[test]
fn zero_trials_is_a_vacuous_pass() {
    let p = parse_pack(XLINE).unwrap();
    let r = validate_pack(&p, 0, 0);
    assert!(r.passed());
    assert!(r.warnings.iter().any(|w| w.contains("vacuous")));
}

#[test]
fn trusted_cache_skips_validation() {
    let dir = std::env::temp_dir().join(format!("ktors-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trusted");
    let mut bad = parse_pack(XLINE).unwrap();
    bad.table_mut(TableKind::Delta).unwrap().polys[0].terms[0].coeff = Coeff::Const(Rat::from_integer(3.into()));
    assert!(matches!(ValidatedPack::new(bad.clone(), None, 8, 0), Err(Error::PackValidation(_))));

    let mut cache = TrustedCache::load(&path).unwrap();
    assert!(cache.is_empty());
    cache.insert(&pack_checksum(&bad));
    cache.save().unwrap();
    let cache = TrustedCache::load(&path).unwrap();
    assert_eq!(cache.len(), 1);
    let v = ValidatedPack::new(bad, Some(&cache), 8, 0).unwrap();
    assert!(v.report().is_none());
    std::fs::remove_dir_all(&dir).unwrap();
}

fn pack_backend(curve: &HyperellipticCurveQ) -> PackBackend {
    let v = ValidatedPack::new(parse_pack(XLINE).unwrap(), None, 8, 7).unwrap();
    PackBackend::new(curve, &v).unwrap()
}

fn invariants(r: &kummer_torsion::torsion::TorsionReport) -> Vec<u32> {
    r.invariant_factors().iter().map(|d| d.try_into().unwrap()).collect()
}

#[test]
fn pack_backend_matches_oracle() {
    for (a, b) in common::special_curves() {
        let curve = HyperellipticCurveQ::from_ints(1, &[b, a, 0, 1]).unwrap();
        let r = full_torsion(&pack_backend(&curve), &TorsionConfig::default()).unwrap();
        assert_eq!(invariants(&r), common::brute_torsion(a, b), "a = {a}, b = {b}");
    }
}

#[test]
fn pack_backend_matches_builtin_on_non_monic_cubics() {
    for f in [[1, 0, 0, 4], [0, -3, 0, 3], [6, 0, 0, 2], [0, 1, 1, 5], [4, 0, 0, -3]] {
        let curve = HyperellipticCurveQ::from_ints(1, &f).unwrap();
        let cfg = TorsionConfig::default();
        let a = full_torsion(&pack_backend(&curve), &cfg).unwrap();
        let b = full_torsion(&EllipticBackend::new(&curve).unwrap(), &cfg).unwrap();
        assert_eq!(a.invariants, b.invariants, "f = {f:?}");
    }
}

fn arb_coeff() -> impl Strategy<Value = Coeff> {
    prop_oneof![
        (-50i64..50, 1i64..9).prop_map(|(n, d)| Coeff::Const(Rat::new(n.into(), d.into()))),
        prop::collection::vec(((-9i64..9), prop::collection::vec(0u8..3, 5)), 1..3)
            .prop_map(|v| Coeff::Poly(v.into_iter().map(|(c, e)| (Rat::from_integer(c.into()), e)).collect())),
    ]
}

fn arb_quartic(vars: usize) -> impl Strategy<Value = kummer_torsion::pack::PackPoly> {
    prop::collection::vec((arb_coeff(), 0..=4u8), 1..5).prop_map(move |terms| kummer_torsion::pack::PackPoly {
        terms: terms
            .into_iter()
            .map(|(coeff, a)| {
                let mut exps = vec![0u8; vars];
                exps[0] = a;
                exps[vars - 1] = 4 - a;
                kummer_torsion::pack::PackTerm { coeff, exps }
            })
            .collect(),
    })
}

proptest! {
    #[test]
    fn serialisation_round_trips(d0 in arb_quartic(2), d1 in arb_quartic(2), src in "[a-z ]{0,20}") {
        let mut p = parse_pack("pack genus=1\n[table delta vars=2 count=2]\n{\n1 4 0\n}\n{\n1 0 4\n}\n").unwrap();
        p.table_mut(TableKind::Delta).unwrap().polys = vec![d0, d1];
        p.source = (!src.trim().is_empty()).then(|| src.trim().to_string());
        let text = serialize_pack(&p);
        let q = parse_pack(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(pack_checksum(&q), pack_checksum(&p));
    }
}
