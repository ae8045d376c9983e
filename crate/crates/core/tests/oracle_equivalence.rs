use fermion_entanglement::eta::{eta_concurrence, eta_rdm, EtaNumberState};
use fermion_entanglement::free_fermion::{
    eigenstate_concurrence, eigenstate_rdm, thermal_concurrence, thermal_rdm, EigenstateSpec, ModelParams,
};
use fermion_entanglement::oracle::{
    build_gibbs, dicke_state, eta_number_state, partition_function_product, ring_hamiltonian_matrix,
    wootters_concurrence, DensityMatrix4, FockState,
};
use proptest::prelude::*;

fn modes_of(mask: usize, sites: usize) -> Vec<usize> {
    (1..=sites).filter(|k| mask >> (k - 1) & 1 == 1).collect()
}

fn closed_matrix(rdm: &fermion_entanglement::TwoSiteRdm) -> DensityMatrix4 {
    DensityMatrix4::from_rdm(rdm).unwrap()
}

#[test]
fn every_eigenstate_up_to_six_sites() {
    for sites in 2..=6 {
        let params = ModelParams::new(sites, 1.0, 0.0, 1.0).unwrap();
        for mask in 0..1usize << sites {
            let modes = modes_of(mask, sites);
            let spec = EigenstateSpec::new(sites, &modes).unwrap();
            let psi = FockState::momentum_eigenstate(sites, &modes).unwrap();
            let closed = closed_matrix(&eigenstate_rdm(&params, &spec).unwrap());
            let c = eigenstate_concurrence(&params, &spec).unwrap().value();
            // translation invariance: every interior neighbouring pair agrees
            for first in 1..sites {
                let oracle = psi.two_site_rdm(first, first + 1).unwrap();
                assert!(oracle.max_outside_x_structure() < 1e-12);
                assert!(closed.max_deviation(&oracle) < 1e-12, "L={sites} modes={modes:?} pair {first}");
                assert!((wootters_concurrence(&oracle).value() - c).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn half_filled_six_site_entries() {
    let params = ModelParams::new(6, 1.0, 0.0, 1.0).unwrap();
    let spec = EigenstateSpec::new(6, &[1, 2, 3]).unwrap();
    let oracle = FockState::momentum_eigenstate(6, &[1, 2, 3]).unwrap().two_site_rdm(1, 2).unwrap();
    let rdm = eigenstate_rdm(&params, &spec).unwrap();
    assert!((oracle.u() - rdm.u()).abs() < 1e-12);
    assert!((oracle.v() - rdm.v()).abs() < 1e-12);
    assert!((oracle.w1() - rdm.w1()).abs() < 1e-12);
    assert!((oracle.z() - rdm.z()).norm() < 1e-12);
}

#[test]
fn momentum_eigenstates_are_site_hamiltonian_eigenstates() {
    for sites in 2..=7 {
        let params = ModelParams::new(sites, 0.8, -0.3, 1.0).unwrap();
        for mask in 0..1usize << sites {
            let modes = modes_of(mask, sites);
            let psi = FockState::momentum_eigenstate(sites, &modes).unwrap();
            let energy = fermion_entanglement::free_fermion::eigenstate_energy(
                &params,
                &EigenstateSpec::new(sites, &modes).unwrap(),
            );
            let mut residual = psi.apply_ring_hamiltonian(&params).unwrap();
            residual.add_scaled(num_complex::Complex64::new(-energy, 0.0), &psi);
            assert!(residual.norm_sqr().sqrt() < 1e-12, "L={sites} modes={modes:?}");
        }
    }
}

#[test]
fn mode_picture_is_unentangled() {
    // in the mode picture a momentum eigenstate is a single bitstring
    for sites in 2..=6 {
        for mask in 0..1usize << sites {
            let product = FockState::basis(sites, mask).unwrap();
            for i in 1..=sites {
                for j in i + 1..=sites {
                    let rho = product.two_site_rdm(i, j).unwrap();
                    assert!(rho.max_outside_x_structure() == 0.0);
                    assert_eq!(wootters_concurrence(&rho).value(), 0.0);
                }
            }
        }
    }
}

#[test]
fn thermal_grid_up_to_eight_sites() {
    for sites in 2..=8 {
        for i in 0..5 {
            let beta = 0.2 + 1.2 * i as f64;
            for j in 0..5 {
                let mu = -2.0 + j as f64;
                let params = ModelParams::new(sites, 1.0, mu, beta).unwrap();
                let gibbs = build_gibbs(&params).unwrap();
                let oracle = gibbs.two_site_rdm(1, 2).unwrap();
                let closed = closed_matrix(&thermal_rdm(&params).unwrap());
                assert!(oracle.max_outside_x_structure() < 1e-12);
                assert!(closed.max_deviation(&oracle) < 1e-12, "L={sites} beta={beta} mu={mu}");
                let c = thermal_concurrence(&params).unwrap().value();
                assert!((wootters_concurrence(&oracle).value() - c).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn partition_function_up_to_ten_sites() {
    for sites in [2usize, 5, 8, 10] {
        for &(mu, beta) in &[(0.0, 0.7), (1.3, 2.5), (-0.6, 6.0)] {
            let params = ModelParams::new(sites, 1.0, mu, beta).unwrap();
            let gibbs = build_gibbs(&params).unwrap();
            let product = partition_function_product(&params);
            // relative error of Z is the absolute error of ln Z
            assert!((gibbs.ln_partition_function() - product).abs() < 1e-10, "L={sites}");
            assert!(gibbs.max_eigen_residual() < 1e-10);
        }
    }
}

#[test]
fn site_and_mode_spectra_coincide() {
    for sites in 2..=8 {
        let params = ModelParams::new(sites, 1.0, 0.4, 1.0).unwrap();
        let mut site: Vec<f64> = ring_hamiltonian_matrix(&params).unwrap().symmetric_eigen().eigenvalues.iter().copied().collect();
        site.sort_by(f64::total_cmp);
        let spectrum = params.spectrum();
        let mut mode: Vec<f64> = (0..1usize << sites)
            .map(|mask| modes_of(mask, sites).iter().map(|&k| spectrum.energy(k) - params.mu()).sum())
            .collect();
        mode.sort_by(f64::total_cmp);
        for (a, b) in site.iter().zip(&mode) {
            assert!((a - b).abs() < 1e-10, "L={sites}");
        }
    }
}

#[test]
fn w_states_every_pair() {
    for sites in 2..=10 {
        let w = dicke_state(sites, 1).unwrap();
        for i in 1..=sites {
            for j in i + 1..=sites {
                let c = wootters_concurrence(&w.two_site_rdm(i, j).unwrap()).value();
                assert!((c - 2.0 / sites as f64).abs() < 1e-12, "L={sites} ({i},{j})");
            }
        }
    }
}

#[test]
fn dicke_states_match_eta_closed_forms() {
    let rho = dicke_state(4, 2).unwrap().two_site_rdm(1, 2).unwrap();
    assert!((rho.u() - 1.0 / 6.0).abs() < 1e-12);
    assert!((rho.v() - 1.0 / 6.0).abs() < 1e-12);
    assert!((rho.z().re - 1.0 / 3.0).abs() < 1e-12);
    let full = dicke_state(5, 5).unwrap().two_site_rdm(2, 4).unwrap();
    assert_eq!(wootters_concurrence(&full).value(), 0.0);
    for sites in 2..=10 {
        for pairs in 0..=sites {
            let state = EtaNumberState::new(sites, pairs).unwrap();
            let oracle = eta_number_state(&state).unwrap().two_site_rdm(1, sites).unwrap();
            let closed = closed_matrix(&eta_rdm(&state).unwrap());
            assert!(closed.max_deviation(&oracle) < 1e-12, "L={sites} N={pairs}");
            let c = eta_concurrence(&state).unwrap().value();
            assert!((wootters_concurrence(&oracle).value() - c).abs() < 1e-12);
        }
    }
}

#[test]
fn ten_site_three_pair_entries() {
    let state = EtaNumberState::new(10, 3).unwrap();
    let rho = eta_number_state(&state).unwrap().two_site_rdm(3, 7).unwrap();
    assert!((rho.u() - 42.0 / 90.0).abs() < 1e-12);
    assert!((rho.v() - 6.0 / 90.0).abs() < 1e-12);
    assert!((rho.w1() - 21.0 / 90.0).abs() < 1e-12);
    assert!((rho.z().re - 21.0 / 90.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_thermal_states_match_oracle(
        sites in 2usize..=6,
        hopping in -2.0f64..2.0,
        mu in -3.0f64..3.0,
        beta in 0.05f64..12.0,
    ) {
        let params = ModelParams::new(sites, hopping, mu, beta).unwrap();
        let oracle = build_gibbs(&params).unwrap().two_site_rdm(1, 2).unwrap();
        let closed = closed_matrix(&thermal_rdm(&params).unwrap());
        prop_assert!(closed.max_deviation(&oracle) < 1e-12);
        let c = thermal_concurrence(&params).unwrap().value();
        prop_assert!((wootters_concurrence(&oracle).value() - c).abs() < 1e-10);
    }
}
