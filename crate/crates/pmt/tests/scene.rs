use pmt::scene::Scene;
use pmt_core::presets::Preset;

const TOL: f64 = 1e-12;

#[test]
fn exported_presets_reparse_to_the_same_pmt() {
    for name in Preset::NAMES {
        let f = Preset::named(name).unwrap().build().unwrap();
        let text = Scene::explicit(&f).to_toml();
        let g = Scene::parse(&text, name).unwrap().build().unwrap();
        assert_eq!(f.len(), g.len(), "{name}");
        for (m, n) in f.maps().iter().zip(g.maps()) {
            for (x, y) in m.coefficients().iter().zip(n.coefficients()) {
                assert!((x - y).norm() < TOL, "{name}: map {x} vs {y}");
            }
        }
        for (r, s) in f.partition().regions().iter().zip(g.partition().regions()) {
            assert_eq!(r.constraints().len(), s.constraints().len(), "{name}");
            for ((c, side), (d, side2)) in r.constraints().iter().zip(s.constraints()) {
                assert_eq!(side, side2, "{name}");
                let (a1, b1, d1) = c.coefficients();
                let (a2, b2, d2) = d.coefficients();
                assert!((a1 - a2).abs() < TOL && (b1 - b2).norm() < TOL && (d1 - d2).abs() < TOL, "{name}");
            }
        }
    }
}

#[test]
fn scene_settings_survive_a_round_trip() {
    let mut scene = Scene::for_preset("tent").unwrap();
    scene.render.pixels = 123;
    scene.analysis.seed = 99;
    scene.sweep.nx = 7;
    let back = Scene::parse(&scene.to_toml(), "t").unwrap();
    assert_eq!(back, scene);
}

#[test]
fn checked_in_scenes_load() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenes");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            Scene::load(path.to_str().unwrap()).unwrap().build().unwrap_or_else(|e| panic!("{path:?}: {e}"));
            n += 1;
        }
    }
    assert!(n > 0);
}
