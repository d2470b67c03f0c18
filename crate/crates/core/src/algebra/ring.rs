use std::collections::HashMap;
use std::sync::Arc;

/// Role of a ring variable.  Chart coordinates carry a `∂`-direction,
/// parameters (additive chart constants such as `a`, `b`, `c`) and jet
/// symbols do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarClass {
    Coordinate,
    Parameter,
    Jet,
}

/// An ordered polynomial ring.  One shared ring per computation session:
/// chart coordinates come first, then parameters, then jet symbols.
#[derive(Debug)]
pub struct Ring {
    names: Vec<String>,
    classes: Vec<VarClass>,
    index: HashMap<String, usize>,
    n_coords: usize,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    /// Coordinates must precede all parameter and jet variables.
    pub fn new(vars: Vec<(String, VarClass)>) -> RingRef {
        let mut n_coords = 0;
        let mut seen_non_coord = false;
        for (_, c) in &vars {
            match c {
                VarClass::Coordinate => {
                    assert!(!seen_non_coord, "coordinates must come first in the ring");
                    n_coords += 1;
                }
                _ => seen_non_coord = true,
            }
        }
        let names: Vec<String> = vars.iter().map(|(n, _)| n.clone()).collect();
        let classes: Vec<VarClass> = vars.iter().map(|(_, c)| *c).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate ring variable `{n}`");
        }
        Arc::new(Ring {
            names,
            classes,
            index,
            n_coords,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn n_coords(&self) -> usize {
        self.n_coords
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class(&self, i: usize) -> VarClass {
        self.classes[i]
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Two values belong to the same session iff they share the ring.
pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b)
}
