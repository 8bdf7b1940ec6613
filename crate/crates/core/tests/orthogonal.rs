use orbifold_verify::arith::FiniteField;
use orbifold_verify::fusion::FusionRing;
use orbifold_verify::lattice::LeechConstruction;
use orbifold_verify::ledger::{omega_minus_8_3_order, WittSign};
use orbifold_verify::orthogonal::{
    build_orthogonal_group, dickson_spinor, singular_lines, OrthogonalSubgroup, PermGroupBSGS, QuadSpaceF3,
};
use std::time::Instant;

fn fusion_space() -> QuadSpaceF3 {
    let k = LeechConstruction::new().unwrap();
    QuadSpaceF3::from_fusion(&FusionRing::new(&k.k12).unwrap()).unwrap()
}

#[test]
fn standard_groups_of_dimension_eight() {
    for sign in [WittSign::Plus, WittSign::Minus] {
        let s = QuadSpaceF3::standard(4, sign).unwrap();
        let g = build_orthogonal_group(&s, OrthogonalSubgroup::Full, 11).unwrap();
        let expected = orbifold_verify::ledger::orthogonal_order(4, 3, sign).unwrap().to_u128().unwrap();
        assert_eq!(g.order(), expected);
    }
}

#[test]
fn fusion_space_orthogonal_tower() {
    let s = fusion_space();
    let t = Instant::now();
    let o = build_orthogonal_group(&s, OrthogonalSubgroup::Full, 1).unwrap();
    let h = build_orthogonal_group(&s, OrthogonalSubgroup::SpinorKernel, 2).unwrap();
    let omega = build_orthogonal_group(&s, OrthogonalSubgroup::Omega, 3).unwrap();
    eprintln!("groups built in {:?}", t.elapsed());

    assert_eq!(o.order(), 40_607_874_478_080);
    assert_eq!(h.order(), o.order() / 2);
    assert_eq!(omega.order(), omega_minus_8_3_order().to_u128().unwrap());
    assert_eq!(o.order() / omega.order(), 4);

    for g in o.strong_generators().iter().take(6) {
        assert!(s.is_isometry(g));
    }
    for g in omega.generators() {
        assert!(dickson_spinor(&s, g).unwrap().is_trivial());
        assert!(h.contains(g));
    }
    for g in h.generators() {
        assert!(!dickson_spinor(&s, g).unwrap().spinor_nonsquare);
        assert!(o.contains(g));
    }

    let minus = s.minus_one();
    assert!(o.contains(&minus));
    assert!(!h.contains(&minus));
    assert!(!omega.contains(&minus));

    let singular: Vec<u16> = (1..s.num_points() as u16).filter(|&p| s.q_point(p).is_zero()).collect();
    assert_eq!(singular.len(), 2132);
    let (orbit, _) = omega.orbit_and_stabilizer(singular[0]);
    assert_eq!(orbit, 2132);

    let lines = singular_lines(&s);
    assert_eq!(lines.len(), 1066);
    let (line_orbit, stab) = h.block_orbit_and_stabilizer(&lines[0]);
    assert_eq!(line_orbit, 1066);
    assert_eq!(stab, 19_046_845_440);

    let cached = PermGroupBSGS::from_text(&h.to_text()).unwrap();
    assert_eq!(cached.order(), h.order());
}
