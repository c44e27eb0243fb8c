use proptest::prelude::*;
use serde_json::Value;

use strata_limits::io::parse_multicurve;
use strata_limits::limit_graph::{build_stratum_graph, LabeledStratumGraph};
use strata_limits::oracle::audit_graph;
use strata_limits::pyramid::{self, all_params, pyramid_action, Family, PyramidMulticurveParams, Variant};

fn params() -> impl Strategy<Value = (u32, PyramidMulticurveParams)> {
    (3u32..=40).prop_flat_map(|n| {
        let ps = all_params(n);
        (Just(n), proptest::sample::select(ps))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pyramidal_graphs_are_stable_of_genus_n((n, p) in params()) {
        let fam = pyramid_action(n).unwrap();
        let (mc, g) = pyramid::build(&fam, p).unwrap();
        prop_assert!(g.underlying().is_stable());
        prop_assert_eq!(g.underlying().genus(), n as i64);
        prop_assert!(audit_graph(fam.action(), &mc, &g).passed());
    }

    #[test]
    fn specs_survive_a_json_round_trip((n, p) in params()) {
        let fam = pyramid_action(n).unwrap();
        let mc = pyramid::make_multicurve(&fam, p).unwrap();
        let text = serde_json::to_string(&mc).unwrap();
        let back = parse_multicurve(&text).unwrap();
        prop_assert_eq!(&back, &mc);
        let a = build_stratum_graph(fam.action(), &mc).unwrap();
        let b = build_stratum_graph(fam.action(), &back).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn corrupted_graph_fails_degree_coherence() {
    let fam = pyramid_action(6).unwrap();
    let p = PyramidMulticurveParams::new(Family::OneClosed, Variant::Left, 1);
    let (mc, g) = pyramid::build(&fam, p).unwrap();
    assert!(audit_graph(fam.action(), &mc, &g).passed());

    // Reattach one hub edge to a leaf.
    let mut v: Value = serde_json::to_value(&g).unwrap();
    let edges = v["underlying"]["edges"].as_array_mut().unwrap();
    let leaf = edges[edges.len() - 1][1].clone();
    edges[0][0] = leaf;
    let corrupted: LabeledStratumGraph = serde_json::from_value(v).unwrap();
    let report = audit_graph(fam.action(), &mc, &corrupted);
    assert!(!report.passed());
    let failed: Vec<&str> = report
        .identities
        .iter()
        .filter(|i| !i.pass)
        .map(|i| i.name.as_str())
        .collect();
    assert!(failed.contains(&"degree coherence"), "{failed:?}");
    assert!(report.to_text().contains("FAIL  degree coherence"));
}

#[test]
fn audit_report_json_lists_every_identity() {
    let fam = pyramid_action(5).unwrap();
    let mc = pyramid::example_one(&fam);
    let g = build_stratum_graph(fam.action(), &mc).unwrap();
    let report = audit_graph(fam.action(), &mc, &g);
    let v: Value = serde_json::from_str(&report.to_json()).unwrap();
    let ids = v["identities"].as_array().unwrap();
    assert_eq!(ids.len(), report.identities.len());
    assert!(ids.iter().all(|i| i["pass"] == true));
    let genus = ids.iter().find(|i| i["name"] == "genus conservation").unwrap();
    assert_eq!(genus["actual"], "5");
}

#[test]
fn one_closed_counts_for_six_and_two() {
    // n = 6, m = 2: four vertices and six edges.
    let fam = pyramid_action(6).unwrap();
    let p = PyramidMulticurveParams::new(Family::OneClosed, Variant::Right, 1);
    assert_eq!(
        pyramid::predicted_case(6, p).unwrap(),
        pyramid::TheoremCase::OneClosed { m: 2 }
    );
    let (mc, g) = pyramid::build(&fam, p).unwrap();
    assert_eq!((g.underlying().vertex_count(), g.underlying().edge_count()), (4, 6));
    assert!(audit_graph(fam.action(), &mc, &g).passed());
}
