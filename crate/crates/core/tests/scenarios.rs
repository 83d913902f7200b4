use specseq::linalg::FieldSpec;
use specseq::scenarios::{self, render_chart, run_scenario, ChartFormat, ChartRequest, ChartSs, Overrides, Report, Slice, Status};

const CHEAP: [&str; 7] = ["hopf-e3", "hopf-e3-nonminimal", "hopf-loops", "product-s2", "product-s3", "su2-torus", "ustinovskii"];

fn report(name: &str) -> Report {
    run_scenario(&scenarios::scenario(name).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn cheap_scenarios_pass_their_checks() {
    for name in CHEAP {
        let r = report(name);
        let bad: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(bad.is_empty(), "{name}: {bad:?}");
        assert!(!r.checks.is_empty(), "{name} has no checks");
    }
}

#[test]
fn reports_survive_a_json_round_trip() {
    for name in CHEAP {
        let r = report(name);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(report("hopf-loops").to_json(), report("hopf-loops").to_json());
}

#[test]
fn hopf_e3_has_a_single_transgression() {
    let r = report("hopf-e3");
    let ls = r.sequence("ls").unwrap();
    assert_eq!(ls.degeneration.page, Some(3));
    let arrows: Vec<_> = ls.pages.iter().flat_map(|p| p.d_nonzero.iter().map(move |d| (p.r, d.from, d.to, d.rank))).collect();
    assert_eq!(arrows, vec![(2, (0, 1), (2, 0), 1)]);
}

#[test]
fn field_override_changes_the_report() {
    let spec = Overrides { field: Some(FieldSpec::Prime(3)), ..Default::default() }.apply(&scenarios::scenario("product-s3").unwrap());
    let r = run_scenario(&spec).unwrap();
    assert_eq!(r.field, "f3");
    assert!(r.passed());
}

#[test]
fn charts_render_in_both_formats() {
    let r = report("hopf-e3");
    for format in [ChartFormat::Ascii, ChartFormat::Tex] {
        for ss in [ChartSs::Ls, ChartSs::Em] {
            let text = render_chart(&r, &ChartRequest { ss, page: 2, slice: None, format }).unwrap();
            assert!(!text.is_empty());
        }
    }
    let sliced = render_chart(&r, &ChartRequest { ss: ChartSs::PreludeLs, page: 1, slice: Some(Slice::S(0)), format: ChartFormat::Ascii });
    assert!(sliced.is_ok());
    assert!(render_chart(&r, &ChartRequest { ss: ChartSs::Ls, page: 99, slice: None, format: ChartFormat::Ascii }).is_err());
}

#[test]
fn scenario_files_load_from_disk() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios");
    for name in scenarios::scenario_names() {
        let text = std::fs::read_to_string(format!("{dir}/{name}.toml")).unwrap();
        assert_eq!(scenarios::ScenarioSpec::parse(&text).unwrap(), scenarios::scenario(name).unwrap());
    }
}
