#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_comblab")
}

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> String {
    dir().join("fixtures").join(name).to_string_lossy().into_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    dir().join("golden").join(format!("{name}.out"))
}

/// Runs the binary with a clean depth override.
pub fn run(args: &[String]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("COMBLAB_MAX_DEPTH")
        .output()
        .expect("binary runs")
}

pub struct Case {
    pub name: &'static str,
    pub args: Vec<String>,
    pub exit: i32,
}

fn case(name: &'static str, exit: i32, args: &[&str]) -> Case {
    let args = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => fixture(f),
            None => a.to_string(),
        })
        .collect();
    Case { name, args, exit }
}

/// Golden-file invocations. `@name` expands to a fixture path.
pub fn cases() -> Vec<Case> {
    vec![
        case("classify_pair_up", 0, &["classify-pair", "00", "01"]),
        case("classify_pair_wide", 0, &["classify-pair", "0", "3"]),
        case("enum_combs_wide_d1", 0, &["enum-combs", "--depth", "1", "--class", "wide-right", "--max-size", "4"]),
        case("enum_combs_up_d2", 0, &["enum-combs", "--depth", "2", "--class", "up", "-n", "1", "--max-size", "2"]),
        case("is_comb_right", 0, &["is-comb", "--class", "right", "00", "02", "20"]),
        case("is_comb_no", 1, &["is-comb", "--class", "wide-right", "00", "01"]),
        case("witness_weave_d1", 0, &["witness", "weave", "--depth", "1", "-k", "2", "-m", "1", "-n", "1"]),
        case("witness_weave_genuine", 0, &["witness", "weave", "--depth", "1", "-k", "3", "--genuine-k"]),
        case("check_weave_ok", 0, &["check-weave", "--depth", "1", "-k", "2", "-m", "1", "-n", "1", "--strong", "--in", "@weave_d1.json"]),
        case("check_weave_broken", 1, &["check-weave", "--depth", "1", "-k", "2", "--strong", "--in", "@weave_d1_broken.json"]),
        case("witness_grid_s3", 0, &["witness", "grid", "--side", "3", "--strong"]),
        case("check_grid_s4", 0, &["check-grid", "--side", "4", "-k", "2", "--in", "@grid_s4.json"]),
        case("witness_graph_p4", 0, &["witness", "graph", "--in", "@p4.json"]),
        case("check_graph_pattern", 0, &["check-graph-pattern", "--graph", "@p4.json", "--in", "@p4_pattern.json"]),
        case("check_graph_pattern_wrong_graph", 1, &["check-graph-pattern", "--graph", "@two_k2.json", "--in", "@p4_pattern.json"]),
        case("realizable_ok", 0, &["realizable", "--in", "@template_ok.json"]),
        case("realizable_conflict", 1, &["realizable", "--in", "@template_conflict.json"]),
        case("strongify_d1", 0, &["strongify", "--depth", "1"]),
        case("strongify_apply", 0, &["strongify", "--depth", "1", "--apply", "--in", "@weave_d2.json"]),
        case("pullback_pad", 0, &["pullback", "--depth", "2", "--depth0", "1", "--pad", "3", "--in", "@weave_d2.json"]),
        case("grid_embed_d1", 0, &["grid-embed", "--depth", "1"]),
        case("grid_to_weave_d1", 0, &["grid-to-weave", "--depth", "1", "--in", "@grid_s4.json"]),
        case("eps_scale_s2", 0, &["eps-scale", "--side", "2"]),
        case("eps_scale_apply", 0, &["eps-scale", "--side", "2", "--apply", "--in", "@grid_s2.json"]),
        case("cotree_of_2k2", 0, &["cotree", "--in", "@two_k2.json"]),
        case("cotree_of_p4", 1, &["cotree", "--in", "@p4.json"]),
        case("cotree_random", 0, &["cotree", "--random", "6", "--seed", "7"]),
        case("cotree_eval_dot", 0, &["cotree", "--eval", "--dot", "--in", "@cotree_2k2.json"]),
        case("cotree_dot", 0, &["cotree", "--dot", "--in", "@two_k2.json"]),
        case("find_p4", 1, &["find-p4", "--in", "@p4.json"]),
        case("find_p4_none", 0, &["find-p4", "--in", "@two_k2.json"]),
        case("comb_graph_d1", 0, &["comb-graph", "--depth", "1"]),
        case("comb_graph_d1_dot", 0, &["comb-graph", "--depth", "1", "--dot"]),
        case("embed_cograph_2k2", 0, &["embed-cograph", "--in", "@cotree_2k2.json"]),
        case("bridge_graph_to_weave", 0, &["bridge", "graph-to-weave", "--depth", "1", "--in", "@comb_pattern_d1.json"]),
        case("bridge_weave_to_graph", 0, &["bridge", "weave-to-graph", "--depth", "2", "--cotree", "@cotree_2k2.json", "--in", "@weave_d2.json"]),
        case("triangle_free_demo", 0, &["triangle-free-demo", "--len", "3"]),
        case("generic_chain_binary", 0, &["generic-chain", "--require", "len>=2", "--require", "contains:11", "--require", "len>=5"]),
        case("generic_chain_poset", 0, &["generic-chain", "--in", "@poset.json"]),
    ]
}
