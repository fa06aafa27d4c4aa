//! Finite subgroups of G_2 and their images modulo {+-1}.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::endo::Fgl;
use crate::error::{MoravaError, Result};
use crate::gtwo::{GElt, Order, DEFAULT_ORDER_CAP};

type Key = (u64, u64, u64, u64, u8);

pub const DEFAULT_CAP: usize = 96;

pub const STANDARD_NAMES: [&str; 8] = ["Q8", "C6", "C8", "G24", "G12", "G48", "G24p", "G48p"];

#[derive(Clone, Debug)]
pub struct SubgroupTable {
    pub name: String,
    pub elements: Vec<GElt>,
    pub projective: bool,
    index: HashMap<Key, usize>,
}

impl SubgroupTable {
    fn key_of(x: &GElt, projective: bool) -> Key {
        if projective {
            x.proj_key()
        } else {
            x.key()
        }
    }

    fn from_elements(name: &str, elements: Vec<GElt>, projective: bool) -> Self {
        let index = elements.iter().enumerate().map(|(n, x)| (Self::key_of(x, projective), n)).collect();
        SubgroupTable { name: name.to_string(), elements, projective, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &GElt) -> Option<usize> {
        self.index.get(&Self::key_of(x, self.projective)).copied()
    }

    pub fn contains(&self, x: &GElt) -> bool {
        self.position(x).is_some()
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.contains(&x.inv()) && self.elements.iter().all(|y| self.contains(&x.mul_unchecked(y))))
    }

    pub fn is_subset_of(&self, other: &SubgroupTable) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// Image of every element under h x h^-1.
    pub fn conjugate(&self, h: &GElt, name: &str) -> Result<Self> {
        let els = self.elements.iter().map(|x| h.conj(x)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_elements(name, els, self.projective))
    }

    /// The same elements read modulo {+-1}, in first-occurrence order.
    pub fn projectivize(&self, name: &str) -> Self {
        let mut seen = HashSet::new();
        let els = self.elements.iter().filter(|x| seen.insert(x.proj_key())).copied().collect();
        Self::from_elements(name, els, true)
    }

    pub fn reduce(&self, prec: u32) -> Result<Self> {
        let els = self.elements.iter().map(|x| x.reduce(prec)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_elements(&self.name, els, self.projective))
    }

    /// Element orders (modulo {+-1} for projective tables) with multiplicities.
    pub fn order_profile(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for x in &self.elements {
            let o = if self.projective { x.proj_order(DEFAULT_ORDER_CAP) } else { x.order(DEFAULT_ORDER_CAP) };
            let o = match o {
                Order::Finite(n) => n,
                Order::Unbounded => 0,
            };
            *out.entry(o).or_insert(0) += 1;
        }
        out
    }

    /// Elements with Galois flag 0.
    pub fn flag_zero(&self, name: &str) -> Self {
        let els = self.elements.iter().filter(|x| x.flag() == 0).copied().collect();
        Self::from_elements(name, els, self.projective)
    }
}

/// Breadth-first closure x -> x g over the generators, in generator order.
pub fn closure(name: &str, generators: &[GElt], cap: usize, projective: bool) -> Result<SubgroupTable> {
    let first = generators.first().ok_or(MoravaError::NotASubgroup)?;
    let id = GElt::identity(first.fgl(), first.prec());
    let mut elements = vec![id];
    let mut seen: HashSet<Key> = HashSet::new();
    seen.insert(SubgroupTable::key_of(&id, projective));
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        head += 1;
        for g in generators {
            let y = x.try_mul(g)?;
            if seen.insert(SubgroupTable::key_of(&y, projective)) {
                elements.push(y);
                if elements.len() > cap {
                    return Err(MoravaError::CapExceeded(cap));
                }
            }
        }
    }
    Ok(SubgroupTable::from_elements(name, elements, projective))
}

pub fn standard_generators(name: &str, fgl: Fgl, prec: u32) -> Result<Vec<GElt>> {
    let g = |n: &str| GElt::named(n, fgl, prec);
    Ok(match name {
        "Q8" => vec![g("i")?, g("j")?],
        "C6" => vec![g("omega")?.neg()],
        "C8" => vec![g("i")?, g("bracket_1pi")?],
        "G24" => vec![g("i")?, g("omega")?],
        "G12" => vec![g("omega")?.neg(), g("bracket_jmk")?],
        // j and k are redundant as generators; listing them first makes the breadth-first
        // order reach e, i, j, k before the other coset representatives of G12.
        "G48" => vec![g("i")?, g("j")?, g("k")?, g("omega")?, g("bracket_1pi")?],
        _ => return Err(MoravaError::UnknownName(name.to_string())),
    })
}

/// Named tables; a leading `P` gives the image modulo {+-1}, a trailing `p` the pi-conjugate.
pub fn standard(name: &str, fgl: Fgl, prec: u32) -> Result<SubgroupTable> {
    if prec < 4 {
        return Err(MoravaError::InsufficientPrecision { needed: 4, have: prec });
    }
    let (projective, base) = match name.strip_prefix('P') {
        Some(rest) if !rest.is_empty() => (true, rest),
        _ => (false, name),
    };
    let (primed, base) = match base.strip_suffix('p') {
        Some(rest) => (true, rest),
        None => (false, base),
    };
    if !["Q8", "C6", "C8", "G24", "G12", "G48"].contains(&base) {
        return Err(MoravaError::UnknownName(name.to_string()));
    }
    let gens = standard_generators(base, fgl, prec)?;
    let table = closure(name, &gens, DEFAULT_CAP, projective)?;
    if primed {
        let pi = GElt::standard("pi0", fgl, prec)?;
        table.conjugate(&pi, name)
    } else {
        Ok(table)
    }
}

/// Left coset representatives of h in g, first occurrence in the order of g.
pub fn transversal(g: &SubgroupTable, h: &SubgroupTable) -> Result<Vec<GElt>> {
    if !h.is_subset_of(g) || h.projective != g.projective {
        return Err(MoravaError::NotASubgroup);
    }
    let mut covered: HashSet<Key> = HashSet::new();
    let mut reps = Vec::new();
    for x in &g.elements {
        if covered.contains(&SubgroupTable::key_of(x, g.projective)) {
            continue;
        }
        reps.push(*x);
        for y in &h.elements {
            covered.insert(SubgroupTable::key_of(&x.mul_unchecked(y), g.projective));
        }
    }
    Ok(reps)
}

/// Whether the closure at precision `prec + extra` reduces bijectively onto the one at `prec`.
pub fn is_precision_stable(name: &str, fgl: Fgl, prec: u32, extra: u32) -> Result<bool> {
    let low = standard(name, fgl, prec)?;
    let high = standard(name, fgl, prec + extra)?.reduce(prec)?;
    Ok(low.len() == high.len() && high.is_subset_of(&low))
}
