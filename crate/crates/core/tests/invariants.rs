use mbig_core::bigness::{check_b4, check_b4_on, is_m_big, replay_certificate, BignessConfig, Verdict};
use mbig_core::cohomology::{h1_eliminated, h1_full, DEFAULT_COCYCLE_BUDGET};
use mbig_core::field::Field;
use mbig_core::linalg::Mat;
use mbig_core::matgroup::{enumerate, sym_power_generators, EnumeratedGroup, GroupSpec, DEFAULT_ELEMENT_CAP};
use mbig_core::modrep::{ad0_submodule, ad_module, irreducible_submodules, is_irreducible, GModule, MeataxeConfig};
use mbig_core::par::Exec;
use mbig_core::rootdata::{find_m_regular, index_to_logs, is_m_regular, RootDatum, SearchConfig, TorusElement};

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn sl2(p: u64) -> EnumeratedGroup {
    enumerate(&GroupSpec::sl2(&gf(p)), DEFAULT_ELEMENT_CAP).unwrap()
}

fn sym(p: u64, k: usize) -> EnumeratedGroup {
    enumerate(&sym_power_generators(&GroupSpec::sl2(&gf(p)), k).unwrap(), DEFAULT_ELEMENT_CAP).unwrap()
}

#[test]
fn irreducible_submodules_are_closed_and_simple() {
    for g in [sl2(7), sym(7, 2), sym(5, 3)] {
        let ad = ad_module(&g);
        let subs = irreducible_submodules(&ad, &g, MeataxeConfig::default(), 1000).unwrap();
        assert!(!subs.is_empty());
        for s in &subs {
            assert!(ad.is_invariant(s));
            let m = ad.restrict(s, "W");
            assert!(is_irreducible(&m, &g, MeataxeConfig::default()).unwrap());
        }
    }
}

type ModuleOf = fn(&EnumeratedGroup) -> GModule;

#[test]
fn cocycle_solvers_agree_when_l_divides_the_order() {
    let f5 = gf(5);
    let unipotent = enumerate(
        &GroupSpec::new(&f5, 2, vec![Mat::from_ints(&f5, &[vec![1, 1], vec![0, 1]])]).unwrap(),
        DEFAULT_ELEMENT_CAP,
    )
    .unwrap();
    let cases: Vec<(EnumeratedGroup, ModuleOf)> = vec![
        (sl2(5), |g| GModule::natural(g)),
        (sl2(5), |g| ad0_submodule(&ad_module(g)).unwrap()),
        (unipotent, |g| ad0_submodule(&ad_module(g)).unwrap()),
    ];
    for (g, module) in cases {
        let m = module(&g);
        let a = h1_eliminated(&g, &m, DEFAULT_COCYCLE_BUDGET).unwrap();
        let b = h1_full(&g, &m, DEFAULT_COCYCLE_BUDGET).unwrap();
        assert_eq!(a.h1_dim(), b.h1_dim(), "{}", m.label());
    }
}

#[test]
fn sl2_of_five_has_nonvanishing_adjoint_cohomology() {
    let g = sl2(5);
    let ad0 = ad0_submodule(&ad_module(&g)).unwrap();
    assert_eq!(h1_full(&g, &ad0, DEFAULT_COCYCLE_BUDGET).unwrap().h1_dim(), 1);
    assert_eq!(is_m_big(&g, 1, &BignessConfig::default()).verdict, Verdict::NotBig);
}

#[test]
fn witnesses_replay_across_the_sl2_family() {
    for p in [7, 11, 13, 17] {
        let g = sl2(p);
        for m in 1..=3 {
            let cert = is_m_big(&g, m, &BignessConfig::default());
            assert_ne!(cert.verdict, Verdict::Indeterminate);
            replay_certificate(&g, &cert).unwrap();
        }
    }
}

#[test]
fn b4_scan_is_independent_of_execution() {
    let g = sym(11, 2);
    let cfg = BignessConfig::default();
    let (subs, par) = check_b4(&g, 2, &cfg).unwrap();
    let seq = check_b4_on(&g, 2, &subs, Exec::Sequential);
    assert_eq!(par, seq);
}

#[test]
fn verdict_is_seed_independent() {
    let g = sym(13, 2);
    let v: Vec<_> = (0..4)
        .map(|seed| is_m_big(&g, 2, &BignessConfig { seed, ..BignessConfig::default() }).verdict)
        .collect();
    assert!(v.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn first_regular_point_is_least() {
    for (d, q) in [(RootDatum::a1(), 13), (RootDatum::a2(), 11), (RootDatum::b2(), 7)] {
        let f = gf(q);
        for m in 1..=3 {
            let cfg = SearchConfig::default();
            let found = find_m_regular(&d, &f, m, 2, cfg).unwrap();
            let seq = find_m_regular(&d, &f, m, 2, SearchConfig { exec: Exec::Sequential, ..cfg }).unwrap();
            assert_eq!(found.as_ref().map(|t| t.coords().to_vec()), seq.as_ref().map(|t| t.coords().to_vec()));
            let size = (q - 1).pow(d.rank() as u32);
            let first = (0..size).find(|&i| {
                let t = TorusElement::from_logs(&f, &index_to_logs(i, d.rank(), q));
                is_m_regular(&d, &t, m, 2).unwrap()
            });
            let expect = first.map(|i| TorusElement::from_logs(&f, &index_to_logs(i, d.rank(), q)).coords().to_vec());
            assert_eq!(found.map(|t| t.coords().to_vec()), expect);
        }
    }
}
