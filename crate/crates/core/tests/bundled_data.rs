//! The files under `data/` against brute-force group closures.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::{Path, PathBuf};

use designlab::decompose::{full_report, DesignKind, ReportOptions};
use designlab::exceptional::load_certified;
use designlab::permgroup::{parse_generators, DEFAULT_SEED};
use designlab::{verify_2design, DesignParams, IncidenceStructure, Partition, PermGroup};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn design(name: &str) -> IncidenceStructure {
    IncidenceStructure::parse(&read(name)).unwrap()
}

fn group(name: &str) -> PermGroup {
    PermGroup::with_seed(parse_generators(&read(name)).unwrap(), DEFAULT_SEED).unwrap()
}

/// Every element, by breadth-first closure over the image lists.
fn closure(name: &str) -> HashSet<Vec<usize>> {
    let gens: Vec<Vec<usize>> = parse_generators(&read(name)).unwrap().iter().map(|g| g.images()).collect();
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<usize> = x.iter().map(|&p| g[p]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Smallest invariant partition joining 0 and `y`, as union-find over all elements.
fn joins_everything(elements: &HashSet<Vec<usize>>, n: usize, y: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let root = find(p, p[x]);
            p[x] = root;
        }
        p[x]
    }
    let mut changed = true;
    let (a, b) = (find(&mut parent, 0), find(&mut parent, y));
    parent[a] = b;
    while changed {
        changed = false;
        for g in elements {
            for x in 0..n {
                let (rx, rgx) = (find(&mut parent, x), find(&mut parent, g[x]));
                for z in 0..n {
                    if find(&mut parent, z) == rx {
                        let (r1, r2) = (rgx, find(&mut parent, g[z]));
                        if r1 != r2 {
                            parent[r1] = r2;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    (0..n).all(|x| find(&mut parent, x) == find(&mut parent, 0))
}

fn brute_primitive(name: &str, n: usize) -> bool {
    let elements = closure(name);
    (1..n).all(|y| joins_everything(&elements, n, y))
}

#[test]
fn bundled_designs_verify() {
    assert_eq!(verify_2design(&design("fano.txt")).unwrap(), DesignParams::new(7, 7, 3, 3, 1));
    assert_eq!(verify_2design(&design("biplane16.txt")).unwrap(), DesignParams::new(16, 16, 6, 6, 2));
}

#[test]
fn orders_match_closure() {
    for (gens, order) in [
        ("fano.gens", 168usize),
        ("fano_cycle.gens", 7),
        ("biplane16.translations.gens", 16),
        ("biplane16.flag.gens", 768),
        ("biplane16.aut.gens", 11520),
    ] {
        assert_eq!(closure(gens).len(), order, "{gens}");
        assert_eq!(group(gens).order().to_string(), order.to_string(), "{gens}");
    }
}

#[test]
fn primitivity_matches_brute_force() {
    for (gens, n) in [
        ("fano.gens", 7),
        ("fano_cycle.gens", 7),
        ("biplane16.translations.gens", 16),
        ("biplane16.flag.gens", 16),
    ] {
        assert_eq!(group(gens).is_primitive().unwrap(), brute_primitive(gens, n), "{gens}");
    }
}

#[test]
fn generators_preserve_blocks() {
    let blocks: BTreeSet<Vec<usize>> = design("biplane16.txt")
        .blocks()
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort();
            b
        })
        .collect();
    for name in ["biplane16.translations.gens", "biplane16.flag.gens", "biplane16.aut.gens"] {
        for g in parse_generators(&read(name)).unwrap() {
            let image: BTreeSet<Vec<usize>> = blocks
                .iter()
                .map(|b| {
                    let mut c: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
                    c.sort();
                    c
                })
                .collect();
            assert_eq!(image, blocks, "{name}");
        }
    }
}

#[test]
fn partitions_and_invariance() {
    let sigma = Partition::parse(&read("biplane16.partition"), 16).unwrap();
    let bad = Partition::parse(&read("biplane16.bad.partition"), 16).unwrap();
    let t = group("biplane16.translations.gens");
    assert!(t.preserves_partition(&sigma).is_ok());
    assert!(t.preserves_partition(&bad).is_err());
    assert!(group("biplane16.flag.gens").preserves_partition(&sigma).is_ok());
    assert!(group("biplane16.aut.gens").preserves_partition(&sigma).is_err());
}

#[test]
fn report_with_flag_transitive_group() {
    let d = design("biplane16.txt");
    let sigma = Partition::parse(&read("biplane16.partition"), 16).unwrap();
    let g = group("biplane16.flag.gens");
    let r = full_report(&d, Some(&g), &sigma, ReportOptions::default()).unwrap();
    assert!(r.passed());
    assert_eq!((r.k0, r.k1, r.mu, r.eta), (2, 3, 2, 4));
    assert_eq!(r.d1_kind, DesignKind::SymmetricOneDesign);
    let section = r.group.unwrap();
    assert!(section.flag_transitive);
    assert_eq!(section.order.to_string(), "768");
    assert_eq!(section.induced_order.to_string(), "24");
    assert_eq!(section.kernel_order.to_string(), "32");
    assert_eq!(section.class_stabilizer_order.to_string(), "6");
}

#[test]
fn certificate_from_files() {
    let cert = load_certified(
        &data("biplane16.txt"),
        &data("biplane16.flag.gens"),
        &data("biplane16.partition"),
        Some(DesignParams::new(16, 16, 6, 6, 2)),
        DEFAULT_SEED,
    )
    .unwrap();
    assert!(cert.flag_transitive && cert.imprimitive);
    assert_eq!(cert.table_row.k0, 2);
}
