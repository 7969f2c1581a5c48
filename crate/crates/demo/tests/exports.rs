use conelab_demo::{summary_json, transform_text, zero_one_json};

fn parse(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn summary_of_pmet3() {
    let v = parse(&summary_json("PMET", 3).unwrap());
    assert_eq!(v["rays"], 13);
    assert_eq!(v["ray_orbits"], 5);
    assert_eq!(v["facets"], 12);
    assert_eq!(v["skeleton_diameter"], 3);
    assert_eq!(v["ridge_diameter"], 2);
}

#[test]
fn summary_rejects_large_and_unknown_cones() {
    assert!(summary_json("PMET", 6).is_err());
    assert!(summary_json("NOPE", 4).is_err());
}

#[test]
fn transform_matches_the_cli_example() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/");
    let input = std::fs::read_to_string(format!("{root}transform_example.txt")).unwrap();
    for (map, want) in [("P", "transform_example_P.txt"), ("Q", "transform_example_Q.txt")] {
        assert_eq!(transform_text(map, &input).unwrap(), std::fs::read_to_string(format!("{root}{want}")).unwrap());
    }
    assert!(transform_text("Pinv", &input).is_err());
    assert!(transform_text("X", &input).is_err());
}

#[test]
fn zero_one_points_of_met4() {
    let v = parse(&zero_one_json("MET", 4).unwrap());
    assert_eq!(v["total"], 15);
    assert_eq!(v["extreme"], 7);
    assert_eq!(v["extreme_points"].as_array().unwrap().len(), 7);
}
