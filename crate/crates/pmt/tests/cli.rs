use std::path::Path;
use std::process::{Command, Output};

fn pmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmt")).args(args).output().expect("pmt runs")
}

fn ok(args: &[&str]) -> String {
    let out = pmt(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn presets_lists_every_name() {
    let text = ok(&["presets"]);
    for name in pmt_core::presets::Preset::NAMES {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn exported_preset_renders_like_the_preset() {
    let dir = tempfile::tempdir().unwrap();
    let scene = path(dir.path(), "ghost.toml");
    std::fs::write(&scene, ok(&["presets", "--export", "ghost"])).unwrap();
    let a = path(dir.path(), "a.ppm");
    let b = path(dir.path(), "b.ppm");
    ok(&["render", "preset:ghost", "-o", &a, "--pixels", "48", "--iterations", "40"]);
    ok(&["render", &scene, "-o", &b, "--pixels", "48", "--iterations", "40"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for run in ["1", "2"] {
        ok(&[
            "render", "preset:tent", "-o", &path(dir.path(), &format!("t{run}.png")),
            "--legend", &path(dir.path(), &format!("t{run}.txt")), "--pixels", "64", "--iterations", "60",
        ]);
        ok(&["spiderweb", "preset:tent", "--depth", "5", "-o", &path(dir.path(), &format!("a{run}.txt"))]);
        ok(&[
            "check", "preset:two_scalings", "--seeds", "20", "--seed", "7",
            "-o", &path(dir.path(), &format!("c{run}.json")),
        ]);
    }
    for stem in ["t%.png", "t%.txt", "a%.txt", "c%.json"] {
        let read = |run| std::fs::read(dir.path().join(stem.replace('%', run))).unwrap();
        assert_eq!(read("1"), read("2"), "{stem}");
    }
}

#[test]
fn zero_iterations_leave_every_pixel_unresolved() {
    let dir = tempfile::tempdir().unwrap();
    let img = path(dir.path(), "z.ppm");
    let legend = ok(&["render", "preset:ghost", "-o", &img, "--pixels", "16", "--iterations", "0"]);
    let bytes = std::fs::read(&img).unwrap();
    let header = b"P6\n16 16\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert!(bytes[header.len()..].iter().all(|&b| b == 255));
    assert!(legend.contains("256  1.000000  unresolved"), "{legend}");
}

#[test]
fn two_scalings_boundary_pixels_hug_the_unit_circle() {
    let dir = tempfile::tempdir().unwrap();
    let img = path(dir.path(), "u.ppm");
    ok(&["render", "preset:two_scalings", "-o", &img, "--pixels", "100", "--iterations", "50"]);
    let bytes = std::fs::read(&img).unwrap();
    let data = &bytes[b"P6\n100 100\n255\n".len()..];
    // Flagged within 1.5 pixel diagonals of the circle (the default
    // threshold), plus half a diagonal for the pixel itself.
    let reach = 2.0 * 0.04 * std::f64::consts::SQRT_2;
    let mut black = 0;
    for row in 0..100 {
        for col in 0..100 {
            let i = 3 * (row * 100 + col);
            if data[i..i + 3] == [0, 0, 0] {
                black += 1;
                let x = -2.0 + (col as f64 + 0.5) * 0.04;
                let y = 2.0 - (row as f64 + 0.5) * 0.04;
                let r = (x * x + y * y).sqrt();
                assert!((r - 1.0).abs() < reach, "black pixel at radius {r}");
            }
        }
    }
    assert!(black > 0);
}

#[test]
fn periodics_report_is_one_based() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "p.json");
    let table = ok(&["periodics", "preset:hiper_no_ss", "--max-len", "3", "-o", &out]);
    assert!(table.contains("complete up to period 3"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    assert!(points.iter().all(|p| p["word"] == serde_json::json!([1]) || p["word"] == serde_json::json!([2])));
    assert_eq!(v["config"]["analysis"]["max_len"], 3);
}

#[test]
fn sweep_writes_grid_and_locus() {
    let dir = tempfile::tempdir().unwrap();
    let grid = path(dir.path(), "g.json");
    let img = path(dir.path(), "g.ppm");
    ok(&["sweep", "preset:hiper_no_ss", "--nx", "4", "--ny", "3", "-o", &grid, "--image", &img]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(grid).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
    assert_eq!(v["cells"][0].as_array().unwrap().len(), 4);
    assert!(std::fs::read(img).unwrap().starts_with(b"P6\n4 3\n255\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(pmt(&["periodics", "preset:nope"]).status.code(), Some(2));
    assert_eq!(pmt(&["periodics", "/nonexistent/scene.toml"]).status.code(), Some(2));
    assert_eq!(pmt(&["sweep", "preset:ghost"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.toml");
    std::fs::write(&bad, "[pmt]\npreset = \"ghost\"\ncolour = 1\n").unwrap();
    assert_eq!(pmt(&["periodics", &bad]).status.code(), Some(2));

    let img = path(dir.path(), "big.ppm");
    assert_eq!(pmt(&["render", "preset:ghost", "-o", &img, "--pixels", "100000"]).status.code(), Some(3));
    assert_eq!(pmt(&["periodics", "preset:tent", "--max-len", "30"]).status.code(), Some(3));
}
