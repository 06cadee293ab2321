mod common;

use std::collections::{BTreeMap, BTreeSet};

use mfc_core::chain::BigradedChainComplex;
use mfc_core::cycles::{are_click_equivalent, click, induced_cycles, is_acyclic, j_value};
use mfc_core::decomposition::verify_decomposition;
use mfc_core::decat::{chi_t, chi_t_from_chains, chi_t_graph, laplacian};
use mfc_core::graph::{phi, vd_cycle_collections, Graph};
use mfc_core::matching::enumerate_matchings;
use mfc_core::subcomplexes::filtration_complex;
use mfc_core::{FacePoset, MatchingCensus, SimplicialComplex, SizeGuard};
use proptest::prelude::*;

use common::{horizontal_mod2, OraclePoset};

/// Random complexes on at most five vertices with small face posets.
fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::btree_set(0usize..5, 1..=3), 1..5)
        .prop_map(|facets| SimplicialComplex::from_facets(facets).unwrap())
        .prop_filter("face poset too large", |x| FacePoset::new(x).arc_count() <= 22)
}

fn small_graph() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=6, proptest::collection::vec(proptest::bool::weighted(0.45), 15)).prop_map(|(n, bits)| {
        let mut facets: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] && facets.len() < n + 9 {
                    facets.push(vec![i, j]);
                }
                k += 1;
            }
        }
        SimplicialComplex::from_facets(facets).unwrap()
    })
}

fn census(x: &SimplicialComplex) -> MatchingCensus {
    MatchingCensus::new(x, SizeGuard::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poset_and_matchings_match_oracle(x in small_complex()) {
        let poset = FacePoset::new(&x);
        let oracle = OraclePoset::new(&x);
        let arcs: Vec<(usize, usize)> = poset.arcs().iter().map(|a| (a.upper, a.lower)).collect();
        prop_assert_eq!(&arcs, &oracle.arcs);
        let full = poset.full();
        let ours: BTreeSet<Vec<usize>> = enumerate_matchings(&full).map(|m| m.arcs().to_vec()).collect();
        let theirs: BTreeSet<Vec<usize>> = oracle.matchings().into_iter().collect();
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn cycle_counts_match_oracle(x in small_complex()) {
        let poset = FacePoset::new(&x);
        let oracle = OraclePoset::new(&x);
        let full = poset.full();
        for m in enumerate_matchings(&full) {
            let j = j_value(&poset, &m);
            prop_assert_eq!(j, oracle.j(m.arcs()));
            prop_assert_eq!(is_acyclic(&poset, &m), j == 0);
            for p in 0..m.len() {
                prop_assert!(j_value(&poset, &m.without_position(p)) <= j);
            }
        }
    }

    #[test]
    fn clicks_reverse_independent_cycles(x in small_complex()) {
        let c = census(&x);
        let poset = c.poset();
        for s in c.supported_collections() {
            let m = &c.matchings()[s.witness];
            for (i, cycle) in s.collection.cycles().iter().enumerate() {
                match click(poset, m, i) {
                    Ok(m2) => {
                        prop_assert!(s.collection.is_independent(i));
                        let after = induced_cycles(poset, &m2);
                        prop_assert!(after.cycles().contains(&cycle.reversed(poset)));
                        prop_assert_eq!(&click(poset, &m2, after.cycles().iter().position(|d| *d == cycle.reversed(poset)).unwrap()).unwrap(), m);
                        prop_assert!(are_click_equivalent(poset, m, &m2));
                    }
                    Err(_) => prop_assert!(!s.collection.is_independent(i)),
                }
            }
        }
    }

    #[test]
    fn horizontal_homology_matches_oracle(x in small_complex()) {
        let c = census(&x);
        let ours: BTreeMap<(usize, usize), usize> = BigradedChainComplex::new(&c)
            .horizontal_homology(false)
            .unwrap()
            .entries()
            .map(|((i, j), r)| ((i as usize, j as usize), r))
            .collect();
        prop_assert_eq!(ours, horizontal_mod2(&OraclePoset::new(&x)));
    }

    #[test]
    fn euler_characteristics_agree(x in small_complex()) {
        let c = census(&x);
        prop_assert_eq!(chi_t(&c, true).unwrap(), chi_t_from_chains(&c, true));
        let p = chi_t(&c, false).unwrap();
        prop_assert!(p.degree().unwrap_or(0) <= c.eta());
    }

    #[test]
    fn integer_and_mod2_agree_without_torsion(x in small_complex()) {
        let c = census(&x);
        let cc = BigradedChainComplex::new(&c);
        for k in 0..=c.eta() {
            let z = cc.filtered_homology(Some(k), true).unwrap();
            let f2 = cc.filtered_homology_mod2(Some(k), true).unwrap();
            if z.is_torsion_free() {
                prop_assert_eq!(z.betti(), f2.betti());
            }
            prop_assert_eq!(filtration_complex(&c, k as i64).len(), (0..=cc.top_degree()).map(|i| cc.filtered_chains(Some(k), false).dim(i)).sum::<usize>());
        }
    }

    #[test]
    fn laplacian_identities(x in small_graph()) {
        let g = Graph::from_complex(&x).unwrap();
        let d = laplacian(&g);
        prop_assert!(d.coefficients_count_forests());
        prop_assert_eq!(d.rho[0], 1);
        prop_assert_eq!(d.forest_total(), d.det_id_plus_l);
        let alternating: i64 = d.rho.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r } else { -r }).sum();
        prop_assert_eq!(alternating, d.det_id_minus_l);
        let top = g.vertex_count() - g.component_count();
        prop_assert!(d.rho[top + 1..].iter().all(|&r| r == 0));
    }

    #[test]
    fn graph_structure(x in small_graph()) {
        let c = census(&x);
        let g = Graph::from_complex(&x).unwrap();
        let cc = BigradedChainComplex::new(&c);
        let r = cc.verify_differentials();
        prop_assert!(r.always_valid() && r.dd_squared_zero && r.dd_lowers_by_one);
        prop_assert_eq!(chi_t_graph(&c, true).unwrap(), chi_t(&c, true).unwrap());
        let dh = cc.diagonal_homology().unwrap();
        let full_euler: i64 = cc.dims().iter().map(|(&(i, _), &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        prop_assert_eq!(dh.euler_by_filtration().values().sum::<i64>(), full_euler);
        // phi is onto the nonempty vertex-disjoint collections, and its images are vertex-disjoint
        let mut images = BTreeSet::new();
        for s in c.supported_collections().iter().filter(|s| !s.collection.is_empty()) {
            let im = phi(&x, c.poset(), &s.collection).unwrap();
            let vertices: Vec<usize> = im.iter().flat_map(|cy| cy.vertices.iter().copied()).collect();
            prop_assert_eq!(vertices.len(), vertices.iter().collect::<BTreeSet<_>>().len());
            prop_assert!((0..s.collection.count()).all(|i| s.collection.is_independent(i)));
            images.insert(im);
        }
        let vd: BTreeSet<_> = vd_cycle_collections(&g).into_iter().filter(|c| !c.is_empty()).collect();
        prop_assert_eq!(images, vd);
    }

    #[test]
    fn decomposition_holds(x in small_complex()) {
        let r = verify_decomposition(&census(&x)).unwrap();
        prop_assert!(r.standalone_matches, "standalone: {:?}", r.first_difference);
        prop_assert!(r.ambient_matches);
    }
}
