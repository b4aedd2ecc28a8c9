use std::collections::HashSet;
use std::path::PathBuf;

use topoinv_cli::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn km_config(axes: &str, grid: usize) -> String {
    format!("[model]\nname = \"kane-mele\"\nlso = 0.06\n\n{axes}\n[grid]\nnx = {grid}\nny = {grid}\n")
}

fn axis(name: &str, param: &str, min: f64, max: f64, steps: usize) -> String {
    format!("[{name}]\nparam = \"{param}\"\nmin = {min}\nmax = {max}\nsteps = {steps}\n")
}

fn config_error(text: &str) -> String {
    match SweepConfig::from_toml(text) {
        Err(CliError::Config(msg)) => msg,
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn parses_full_config() {
    let c = SweepConfig::from_file(&data("km_small.toml")).unwrap();
    assert_eq!(c.shape(), (3, 3));
    assert_eq!(c.axis1.value(1), 2.0);
    assert_eq!(c.outputs.len(), 8);
    let p = c.params_at(2, 1).unwrap();
    assert!((p.get("lr").unwrap() - 0.24).abs() < 1e-15);
    assert!((p.get("lv").unwrap() - 0.24).abs() < 1e-15);
    assert_eq!(p.get("t"), Some(1.0));
}

#[test]
fn rejects_invalid_configs() {
    let a1 = axis("axis1", "lr/lso", 0.0, 4.0, 3);
    let a2 = axis("axis2", "lv/lso", 0.0, 8.0, 3);
    let ok = km_config(&format!("{a1}\n{a2}"), 16);
    assert!(SweepConfig::from_toml(&ok).is_ok());

    assert!(config_error(&ok.replace("lso = 0.06", "lso = 0.06\nbogus = 1")).contains("bogus"));
    assert!(config_error(&ok.replace("[grid]", "[grid]\ncolour = 1")).contains("colour"));
    assert!(config_error(&km_config(&format!("{a1}\n{}", axis("axis2", "lr", 0.0, 1.0, 3)), 16)).contains("both set"));
    assert!(config_error(&km_config(&format!("{}\n{a2}", axis("axis1", "lso", 0.0, 1.0, 3)), 16))
        .contains("fixed and swept"));
    assert!(config_error(&km_config(&format!("{}\n{a2}", axis("axis1", "lr", 0.0, 1.0, 1)), 16)).contains("steps"));
    assert!(config_error(&km_config(&format!("{}\n{a2}", axis("axis1", "mu", 0.0, 1.0, 3)), 16))
        .contains("unknown parameter"));
    assert!(config_error(&km_config(&format!("{a1}\n{a2}"), 8)).contains("minimum"));
    assert!(config_error(&format!("{ok}\n[outputs]\nquantities = [\"nu_a\", \"chern\"]\n")).contains("available"));
    assert!(config_error(&format!("{ok}\n[outputs]\nquantities = [\"nu_a\", \"nu_a\"]\n")).contains("twice"));
    assert!(config_error(&format!("{ok}\n[partition]\nkind = \"sublattice\"\n[outputs]\nquantities = [\"nu_s\"]\n"))
        .contains("spin partition"));
    let zero_t = SweepConfig::from_toml(&ok.replace("lso = 0.06", "lso = 0.06\nt = 0"));
    assert!(matches!(zero_t, Err(CliError::Compute(topoinv_bz::Error::InvalidParameter(_)))));
    assert_eq!(zero_t.unwrap_err().exit_code(), 1);

    let sc = std::fs::read_to_string(data("sc_small.toml")).unwrap();
    assert!(config_error(&sc.replace("nx = 32", "nx = 33")).contains("even"));
}

#[test]
fn single_value_axis_is_allowed() {
    let text = km_config(&format!("{}\n{}", axis("axis1", "lr", 0.0, 0.0, 1), axis("axis2", "lv", 0.1, 0.1, 1)), 16);
    assert_eq!(SweepConfig::from_toml(&text).unwrap().shape(), (1, 1));
}

#[test]
fn trivial_raster_has_zero_spin_chern() {
    let text = km_config(&format!("{}\n{}", axis("axis1", "lr", 0.0, 0.03, 2), axis("axis2", "lv", 0.6, 0.8, 2)), 32);
    let pd = run_sweep(&SweepConfig::from_toml(&text).unwrap()).unwrap();
    assert_eq!(pd.cells.len(), 4);
    for c in &pd.cells {
        assert!(c.reliable, "{c:?}");
        assert_eq!(c.nu_s.map(|s| s.as_f64()), Some(0.0));
    }
}

#[test]
fn qsh_point_has_unit_spin_chern() {
    let text = km_config(&format!("{}\n{}", axis("axis1", "lr", 0.05, 0.05, 1), axis("axis2", "lv", 0.1, 0.1, 1)), 32);
    let pd = run_sweep(&SweepConfig::from_toml(&text).unwrap()).unwrap();
    let c = pd.cell(0, 0);
    assert!(c.reliable && c.failure.is_none());
    assert_eq!((c.nu_a, c.nu_b), (Some(1), Some(-1)));
    assert_eq!(c.nu_s.map(|s| s.as_f64()), Some(1.0));
}

#[test]
fn failing_cells_do_not_affect_neighbours() {
    let pd = run_sweep(&SweepConfig::from_file(&data("km_small.toml")).unwrap()).unwrap();
    let closed = pd.cell(2, 0);
    assert_eq!(closed.failure, Some("gap_closed"));
    assert_eq!(closed.nu_total, None);
    for (i, j) in [(1, 0), (2, 1), (1, 1)] {
        assert!(pd.cell(i, j).failure.is_none(), "{:?}", pd.cell(i, j));
    }
}

fn csv_string(pd: &PhaseDiagram) -> String {
    let mut buf = Vec::new();
    write_csv(pd, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn csv_matches_golden_file() {
    let pd = run_sweep(&SweepConfig::from_file(&data("km_small.toml")).unwrap()).unwrap();
    let golden = std::fs::read_to_string(data("km_small.golden.csv")).unwrap();
    assert_eq!(csv_string(&pd), golden);
}

#[test]
fn csv_roundtrip_and_layout() {
    let pd = run_sweep(&SweepConfig::from_file(&data("km_small.toml")).unwrap()).unwrap();
    let path = scratch("roundtrip.csv");
    export_csv(&pd, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for q in &pd.config.outputs {
        assert_eq!(header.iter().filter(|h| **h == q.name()).count(), 1);
    }
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), pd.cells.len());
    for (row, cell) in rows.iter().zip(&pd.cells) {
        assert_eq!(row.len(), header.len());
        for q in &pd.config.outputs {
            let field = row[col(q.name())];
            match cell.value(*q) {
                None => assert_eq!(field, MISSING),
                Some(v) if q.is_invariant() => assert_eq!(field.parse::<f64>().unwrap(), v),
                Some(v) => {
                    let back: f64 = field.parse().unwrap();
                    assert_eq!(format_float(back), field);
                    assert!((back - v).abs() <= 5e-9 * v.abs().max(1e-300), "{back} vs {v}");
                }
            }
        }
        assert_eq!(row[col("status")], cell.failure.unwrap_or(STATUS_OK));
    }
}

#[test]
fn single_cell_diagram_has_two_lines() {
    let text = km_config(&format!("{}\n{}", axis("axis1", "lr", 0.0, 0.0, 1), axis("axis2", "lv", 0.1, 0.1, 1)), 16);
    let pd = run_sweep(&SweepConfig::from_toml(&text).unwrap()).unwrap();
    assert_eq!(csv_string(&pd).lines().count(), 2);
}

#[test]
fn float_format_has_nine_significant_digits() {
    assert_eq!(format_float(1.0), "1.00000000e0");
    assert_eq!(format_float(-0.000123456789123), "-1.23456789e-4");
    assert_eq!(format_float(f64::INFINITY), "inf");
}

fn synthetic(values: &[Option<i64>], w: usize, h: usize) -> PhaseDiagram {
    let text = km_config(&format!("{}\n{}", axis("axis1", "lr", 0.0, 1.0, w), axis("axis2", "lv", 0.0, 1.0, h)), 16)
        + "[outputs]\nquantities = [\"nu_total\", \"spectral_gap\"]\n";
    let config = SweepConfig::from_toml(&text).unwrap();
    let cells = values
        .iter()
        .enumerate()
        .map(|(n, v)| CellRecord {
            i: n % w,
            j: n / w,
            x1: 0.0,
            x2: 0.0,
            nu_a: None,
            nu_b: None,
            nu_total: *v,
            nu_s: None,
            spectral_gap: v.map(|_| 0.5),
            min_s_a: None,
            min_s_b: None,
            ent_gap: None,
            residual_a: None,
            residual_b: None,
            max_angle: None,
            reliable: v.is_some(),
            failure: if v.is_some() { None } else { Some("gap_closed") },
            warnings: Vec::new(),
        })
        .collect();
    PhaseDiagram { config, cells }
}

#[test]
fn constant_diagram_is_one_colour() {
    let pd = synthetic(&[Some(1); 6], 3, 2);
    for q in [Quantity::NuTotal, Quantity::SpectralGap] {
        let (_, _, px) = heatmap_pixels(&pd, q).unwrap();
        assert_eq!(px.iter().collect::<HashSet<_>>().len(), 1);
    }
}

#[test]
fn five_integers_give_five_colours() {
    let pd = synthetic(&[Some(-2), Some(-1), Some(0), Some(1), Some(2), None], 3, 2);
    let (w, h, px) = heatmap_pixels(&pd, Quantity::NuTotal).unwrap();
    assert_eq!((w, h), (3, 2));
    let colours: HashSet<_> = px.iter().collect();
    assert_eq!(colours.len(), 6);
    // top row holds the largest axis2 index
    assert_eq!(px[2], FAILURE_COLOR);
    assert_eq!(px[0], diverging_color(1.0, 2.0));
    assert_eq!(px[4], diverging_color(-1.0, 2.0));
    assert_eq!(diverging_color(0.0, 2.0), [247, 247, 247]);
}

#[test]
fn heatmap_file_is_binary_ppm() {
    let pd = synthetic(&[Some(0), Some(1), Some(2), None], 2, 2);
    let path = scratch("map.ppm");
    export_heatmap(&pd, Quantity::NuTotal, &path).unwrap();
    let bytes = std::fs::read(&path).unwrap();
    let header = b"P6\n2 2\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 12);
}

#[test]
fn unknown_heatmap_quantity_lists_available() {
    let pd = synthetic(&[Some(0); 4], 2, 2);
    match heatmap_pixels(&pd, Quantity::EntGap) {
        Err(CliError::Config(msg)) => assert!(msg.contains("nu_total, spectral_gap"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sequential_map_endpoints() {
    assert_eq!(sequential_color(0.0), [68, 1, 84]);
    assert_eq!(sequential_color(0.5), [33, 145, 140]);
    assert_eq!(sequential_color(1.0), [253, 231, 37]);
    assert_ne!(sequential_color(0.0), FAILURE_COLOR);
}
