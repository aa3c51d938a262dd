#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use acyclic_matching::gen::{Family, GenSpec};
use acyclic_matching::graph::Graph;
use acyclic_matching::io::{parse_edge_list, write_edge_list};
use sha2::{Digest, Sha256};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// One row of a corpus manifest: a `random_capped` instance and the SHA-256
/// of its edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub n: usize,
    pub delta: usize,
    pub m_target: usize,
    pub seed: u64,
    pub sha256: String,
}

impl Instance {
    pub fn spec(&self) -> GenSpec {
        GenSpec {
            family: Family::RandomCapped {
                n: self.n,
                delta: self.delta,
                m_target: self.m_target,
            },
            seed: self.seed,
        }
    }

    /// The edge-list file, header included.
    pub fn text(&self) -> String {
        let spec = self.spec();
        let g = spec.generate().expect("manifest specs are feasible");
        write_edge_list(&g, &spec.header())
    }

    /// Regenerates the instance and checks it against the recorded digest.
    pub fn load(&self) -> (Graph, String) {
        let text = self.text();
        assert_eq!(
            sha256_hex(&text),
            self.sha256,
            "{} drifted from its digest",
            self.id
        );
        (parse_edge_list(&text).unwrap(), text)
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub const MANIFEST_HEADER: &str = "id,n,delta,m_target,seed,sha256";

pub fn read_manifest(name: &str) -> Vec<Instance> {
    let text = fs::read_to_string(data_dir().join(name)).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(MANIFEST_HEADER));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 6, "bad manifest row {l}");
            Instance {
                id: f[0].to_string(),
                n: f[1].parse().unwrap(),
                delta: f[2].parse().unwrap(),
                m_target: f[3].parse().unwrap(),
                seed: f[4].parse().unwrap(),
                sha256: f[5].to_string(),
            }
        })
        .collect()
}

pub fn write_manifest(name: &str, rows: &[Instance]) {
    let mut out = String::from(MANIFEST_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.id, r.n, r.delta, r.m_target, r.seed, r.sha256
        ));
    }
    fs::write(data_dir().join(name), out).unwrap();
}

pub fn fixture(name: &str) -> Graph {
    let path = data_dir().join("fixtures").join(name);
    parse_edge_list(&fs::read_to_string(&path).unwrap()).unwrap()
}

/// The 3-regular fixtures on at most 10 vertices.
pub const CUBIC_FIXTURES: [&str; 6] = [
    "k4.el",
    "k33.el",
    "prism.el",
    "cube.el",
    "wagner.el",
    "petersen.el",
];

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).unwrap()
}
