use orbifold_verify::arith::F3;
use orbifold_verify::extension::{ExtensionGeometry, LabelPair};
use orbifold_verify::fusion::{FusionRing, ModuleLabel};
use orbifold_verify::lattice::LeechConstruction;
use orbifold_verify::orthogonal::{build_orthogonal_group, OrthogonalSubgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup() -> (LeechConstruction, FusionRing, ExtensionGeometry) {
    let k = LeechConstruction::new().unwrap();
    let ring = FusionRing::new(&k.k12).unwrap();
    let ext = ExtensionGeometry::build(&k, &ring).unwrap();
    (k, ring, ext)
}

#[test]
fn geometry_report_passes() {
    let (_, _, ext) = setup();
    let r = ext.report(10_000, 7).unwrap();
    assert!(r.all_pass(), "{r:#?}");
    assert_eq!(r.phi_level_sets, [2187, 2187, 2187]);
}

#[test]
fn eta_and_phi_examples() {
    let (_, ring, ext) = setup();
    assert_eq!(ext.eta(&ModuleLabel::IDENTITY), ModuleLabel::IDENTITY);
    assert!(ext.s_sharp.contains(&LabelPair::new(ModuleLabel::IDENTITY, ModuleLabel::IDENTITY).coords()));
    let s01 = ModuleLabel::s([F3::ZERO; 6], F3::ONE);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let m = ModuleLabel::from_index(rng.gen_range(0..6561));
        let n = ModuleLabel::from_index(rng.gen_range(0..6561));
        let s = LabelPair::new(m, ext.eta(&m));
        let e1 = ext.phi_exponent(&s01, &s).unwrap();
        let e2 = ext.phi_exponent(&n, &s).unwrap();
        let sum = orbifold_verify::fusion::fuse(&s01, &n);
        assert_eq!(ext.phi_exponent(&sum, &s).unwrap(), e1 + e2);
        assert_eq!(ring.qform(&ext.eta(&m)).unwrap(), -ring.qform(&m).unwrap());
    }
    let outside = LabelPair::new(s01, ModuleLabel::IDENTITY);
    assert!(ext.phi_exponent(&s01, &outside).is_err());
    assert!(ext.s_lambda.contains(&outside.coords()));
}

#[test]
fn orthogonal_generators_stabilize_the_graph() {
    let (k, _, ext) = setup();
    let o = build_orthogonal_group(&ext.space, OrthogonalSubgroup::Full, 4).unwrap();
    assert!(ext.graph_stabilizer_check(o.generators()));
    assert!(ext.graph_stabilizer_check(&[orbifold_verify::orthogonal::Perm::identity(6561)]));
    assert!(ext.h_label_action_check(&k).unwrap());
}

#[test]
fn text_export_lists_every_label() {
    let (_, _, ext) = setup();
    let text = ext.to_text();
    assert_eq!(text.lines().filter(|l| l.contains(" -> ")).count(), 6561);
    assert!(text.contains("S:000000:0 -> S:000000:0"));
}
