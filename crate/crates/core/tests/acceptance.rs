use eqalg::acceptance::{run, run_all, Fault, NAMES};

fn check(id: usize) {
    let o = run(id, Fault::None);
    println!("{o}");
    assert!(o.passed, "{o}");
}

macro_rules! criteria {
    ($($name:ident = $id:expr;)*) => {
        $(#[test] fn $name() { check($id); })*
    };
}

criteria! {
    c01_witt_isomorphism_types = 1;
    c02_ghost_kernels = 2;
    c03_verschiebung_exact_sequence = 3;
    c04_pi0_over_prime_fields = 4;
    c05_pi0_over_integers = 5;
    c06_group_ring_of_c2 = 6;
    c07_truncated_laurent_ring = 7;
    c08_group_ring_paths_agree = 8;
    c09_box_unit_and_symmetry = 9;
    c10_geometric_fixed_points_over_z = 10;
    c11_geometric_fixed_points_over_fp = 11;
    c12_weight_zero_slices = 12;
    c13_thh_tables = 13;
    c14_axiom_mutations = 14;
}

#[test]
fn summary() {
    let outcomes = run_all(Fault::None);
    for o in &outcomes {
        eprintln!("{o}");
    }
    assert_eq!(outcomes.len(), NAMES.len());
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn injected_burnside_fault_is_reported() {
    let o = run(14, Fault::BurnsideTran);
    assert!(!o.passed);
    assert!(o.detail.contains("res∘tran = 1 + w"), "{}", o.detail);
}
