use eqalg::fgab::FgAbGroup;
use eqalg::graded::phi_thr_z_dims;
use eqalg::json::{parse, read_group};
use eqalg::mackey::{burnside_hermitian, hermitian_from_ring, validate_mackey};
use eqalg::ringalg::{group_by_name, integers, zmod, GROUP_NAMES};
use eqalg::thr::{box_path_to_dihedral, laurent_inclusion, laurent_thr_pi0, thr_group_ring, thr_pi0};

fn fixed_point_golden() -> Vec<FgAbGroup> {
    let text = include_str!("golden/thr_z_fixed_points.json");
    let v = parse(text).unwrap();
    v["fixed_point_homotopy"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| read_group(&d["group"]).unwrap())
        .collect()
}

#[test]
fn fixed_point_golden_is_consistent() {
    let pi = fixed_point_golden();
    assert_eq!(pi.len(), 3);
    let z = hermitian_from_ring(&integers()).unwrap();
    let level_fix = thr_pi0(&z).unwrap().result.level_fix;
    assert_eq!((level_fix.free_rank(), level_fix.torsion()), (pi[0].free_rank(), pi[0].torsion()));
    // π₁ maps isomorphically to the geometric fixed points; π₂ injects with cokernel Z/2.
    let phi = phi_thr_z_dims(2).unwrap().computed;
    assert_eq!(pi[1].elementary_rank(2), Some(phi[1]));
    assert_eq!(pi[2].order().map(|o| o * 2u32), Some(num_bigint::BigInt::from(1u32 << phi[2])));
}

#[test]
fn group_rings_over_several_bases() {
    let bases = [
        ("Z", hermitian_from_ring(&integers()).unwrap()),
        ("F2", hermitian_from_ring(&zmod(2)).unwrap()),
        ("F3", hermitian_from_ring(&zmod(3)).unwrap()),
        ("burnside", burnside_hermitian()),
    ];
    for &name in GROUP_NAMES.iter().filter(|&&n| n != "trivial") {
        let g = group_by_name(name).unwrap();
        for (bname, base) in &bases {
            let rep = thr_group_ring(&g, base, *bname == "Z").unwrap();
            match *bname {
                "Z" => assert_eq!(rep.paths_agree(), Some(true), "{name}"),
                "burnside" => {
                    let f = box_path_to_dihedral(base, &rep, &rep.dihedral).unwrap();
                    assert!(f.is_isomorphism(), "{name} over the Burnside functor");
                }
                _ => assert_eq!(rep.paths_agree(), None),
            }
            assert!(validate_mackey(rep.result()).is_valid(), "{name} over {bname}");
        }
        let rep = thr_group_ring(&g, &bases[0].1, true).unwrap();
        assert_eq!(rep.result().level_e.free_rank(), rep.data.class_count(), "{name}");
        assert!(rep.result().level_e.torsion().is_empty(), "{name}");
    }
}

#[test]
fn laurent_windows_nest() {
    let reports: Vec<_> = (1..=4).map(|n| laurent_thr_pi0(n).unwrap()).collect();
    for r in &reports {
        assert!(r.has_expected_basis(), "window {}", r.window);
    }
    for i in 0..reports.len() {
        for j in i..reports.len() {
            let f = laurent_inclusion(&reports[i], &reports[j]).unwrap();
            assert!(f.validate().is_valid());
            assert!(f.f_fix.is_injective());
        }
    }
    assert!(laurent_inclusion(&reports[2], &reports[0]).is_err());
}
