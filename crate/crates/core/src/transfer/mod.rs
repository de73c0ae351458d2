//! Transfer matrices and reliability as matrix products.

mod expr;
mod tables;

use crate::error::{Error, Result};
use crate::exact::{Integer, Poly, Rational, Ring, Var};
use rug::ops::Pow;
use crate::graphs::{CellParams, Destination, ElementId, Family, FamilySpec};
use expr::{parse, Multi};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

/// Dense square matrix over a ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    pub dim: usize,
    pub data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![R::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = R::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.dim + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.dim];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let m = &self.data[i * self.dim + j];
                if !m.is_zero() && !x.is_zero() {
                    o.add_product(m, x);
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &Matrix<R>) -> Matrix<R> {
        let n = self.dim;
        let mut out: Matrix<R> = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Compiled table for one family: entry `(i, j)` (0-based) as a multilinear polynomial.
pub struct Table {
    pub dim: usize,
    pub entries: Vec<Multi>,
}

fn compile(dim: usize, sources: &[((usize, usize), String)], aliases: &[((usize, usize), i64, (usize, usize))], zeros: &[(usize, usize)]) -> std::result::Result<Table, String> {
    let mut done: HashMap<(usize, usize), Multi> = HashMap::new();
    let mut assigned: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, _) in sources {
        *assigned.entry(*k).or_default() += 1;
    }
    for (k, _, _) in aliases {
        *assigned.entry(*k).or_default() += 1;
    }
    for k in zeros {
        *assigned.entry(*k).or_default() += 1;
        done.insert(*k, Multi::default());
    }
    for i in 1..=dim {
        for j in 1..=dim {
            match assigned.get(&(i, j)) {
                Some(1) => {}
                Some(c) => return Err(format!("entry ({i},{j}) assigned {c} times")),
                None => return Err(format!("entry ({i},{j}) never assigned")),
            }
        }
    }
    let mut pending: Vec<&((usize, usize), String)> = sources.iter().collect();
    let mut pending_alias: Vec<&((usize, usize), i64, (usize, usize))> = aliases.iter().collect();
    while !pending.is_empty() || !pending_alias.is_empty() {
        let before = pending.len() + pending_alias.len();
        let mut next = Vec::new();
        for item in pending {
            let r = parse(&item.1, |r, c| done.get(&(r, c)).cloned().ok_or_else(|| "pending".to_string()));
            match r {
                Ok(m) => {
                    done.insert(item.0, m);
                }
                Err(e) if e == "pending" => next.push(item),
                Err(e) => return Err(format!("({},{}): {e}", item.0 .0, item.0 .1)),
            }
        }
        pending = next;
        let mut next_alias = Vec::new();
        for al in pending_alias {
            match done.get(&al.2) {
                Some(m) => {
                    let v = Multi::default().add(m, al.1);
                    done.insert(al.0, v);
                }
                None => next_alias.push(al),
            }
        }
        pending_alias = next_alias;
        if pending.len() + pending_alias.len() == before {
            return Err("circular references".into());
        }
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 1..=dim {
        for j in 1..=dim {
            entries.push(done.remove(&(i, j)).unwrap());
        }
    }
    Ok(Table { dim, entries })
}

fn k4_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| {
        let src: Vec<_> = tables::K4_ENTRIES.iter().map(|(k, s)| (*k, tables::k4_source(s))).collect();
        compile(5, &src, &[], &[]).expect("K4 table")
    })
}

fn k4_all_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| {
        let src: Vec<_> = tables::K4_ALL_ENTRIES.iter().map(|(k, s)| (*k, s.to_string())).collect();
        compile(2, &src, &[], &[]).expect("all-terminal table")
    })
}

fn k3_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| {
        let src: Vec<_> = tables::K3_BASE.iter().map(|(k, s)| (*k, s.to_string())).collect();
        compile(13, &src, tables::K3_ALIASES, tables::K3_ZEROS).expect("K3 table")
    })
}

/// Compiled entry table of a family.
pub fn table(family: Family) -> &'static Table {
    match family {
        Family::K4Ladder => k4_table(),
        Family::K3Cylinder { .. } => k3_table(),
        Family::K4AllTerminal => k4_all_table(),
    }
}

fn eval_table<R: Ring>(t: &Table, vals: [R; 9]) -> Matrix<R> {
    let mut memo: Vec<Option<R>> = vec![None; 512];
    let mut prod = |mask: u16| -> R {
        if let Some(v) = &memo[mask as usize] {
            return v.clone();
        }
        let mut acc = R::one();
        for (k, v) in vals.iter().enumerate() {
            if mask & (1 << k) != 0 {
                acc = acc.times(v);
            }
        }
        memo[mask as usize] = Some(acc.clone());
        acc
    };
    let data = t
        .entries
        .iter()
        .map(|m| {
            let mut acc = R::zero();
            for (mask, c) in &m.0 {
                let p = prod(*mask);
                if *c == 1 {
                    acc.plus_assign(&p);
                } else if *c == -1 {
                    acc.minus_assign(&p);
                } else {
                    acc.plus_assign(&p.times(&R::from_i64(*c)));
                }
            }
            acc
        })
        .collect();
    Matrix { dim: t.dim, data }
}

/// Transfer matrix of one cell. Boundary values must already be applied (see `FamilySpec::new`).
pub fn cell_matrix<R: Ring>(family: Family, cell: &CellParams<R>) -> Matrix<R> {
    cell_matrix_with(table(family), family, cell)
}

fn cell_matrix_with<R: Ring>(t: &Table, family: Family, cell: &CellParams<R>) -> Matrix<R> {
    let f = match family {
        Family::K3Cylinder { f_zero: true } => R::zero(),
        _ => cell.f_or_zero(),
    };
    let vals = [
        cell.a.clone(),
        cell.b.clone(),
        cell.c.clone(),
        cell.d.clone(),
        cell.e.clone(),
        f,
        cell.s.clone(),
        cell.t.clone(),
        cell.u_or_one(),
    ];
    eval_table(t, vals)
}

fn dest_index(spec_family: Family, d: Option<Destination>) -> Result<usize> {
    match (spec_family, d) {
        (Family::K4AllTerminal, _) => Ok(0),
        (Family::K4Ladder, Some(Destination::U)) => Err(Error::Invalid("destination U does not exist on the K4-ladder".into())),
        (_, Some(d)) => Ok(d.index()),
        (_, None) => Err(Error::Invalid("missing destination".into())),
    }
}

/// Product `M_n ⋯ M_1 M_0 e_1` evaluated right to left.
pub fn state_vector<R: Ring>(spec: &FamilySpec<R>) -> Vec<R> {
    let m0 = cell_matrix(spec.family, &spec.cells[0]);
    let mut v = m0.column(0);
    for c in &spec.cells[1..] {
        v = cell_matrix(spec.family, c).mul_vec(&v);
    }
    v
}

/// Two-terminal (source `S_0`) or all-terminal reliability of a spec.
pub fn reliability<R: Ring>(spec: &FamilySpec<R>) -> Result<R> {
    let k = dest_index(spec.family, spec.destination)?;
    Ok(state_vector(spec).swap_remove(k))
}

fn k3_rejected_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| {
        let (target, source) = tables::K3_REJECTED_ALIAS;
        let src: Vec<_> = tables::K3_BASE.iter().filter(|(k, _)| *k != target).map(|(k, s)| (*k, s.to_string())).collect();
        let mut aliases: Vec<_> = tables::K3_ALIASES.iter().filter(|(k, _, _)| *k != target).cloned().collect();
        aliases.push((target, 1, source));
        let zeros: Vec<_> = tables::K3_ZEROS.iter().filter(|k| **k != target).cloned().collect();
        compile(13, &src, &aliases, &zeros).expect("alternative K3 table")
    })
}

fn reliability_with<R: Ring>(t: &Table, spec: &FamilySpec<R>) -> Result<R> {
    let k = dest_index(spec.family, spec.destination)?;
    let mut v = cell_matrix_with(t, spec.family, &spec.cells[0]).column(0);
    for c in &spec.cells[1..] {
        v = cell_matrix_with(t, spec.family, c).mul_vec(&v);
    }
    Ok(v.swap_remove(k))
}

/// K3 reliability with the alternative reading `m(8,3) = m(13,2)` of the listing.
/// Kept only so tests can show that this reading disagrees with enumeration.
#[doc(hidden)]
pub fn k3_rejected_alias_reliability<R: Ring>(spec: &FamilySpec<R>) -> Result<R> {
    if !spec.family.is_k3() {
        return Err(Error::Unsupported("only the K3 families have the alternative reading".into()));
    }
    reliability_with(k3_rejected_table(), spec)
}

fn k4_all_printed_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| {
        let src: Vec<_> = tables::K4_ALL_PRINTED.iter().map(|(k, s)| (*k, s.to_string())).collect();
        compile(2, &src, &[], &[]).expect("printed all-terminal table")
    })
}

/// All-terminal reliability through the printed 2x2 matrix. Correct for uniform cells only.
#[doc(hidden)]
pub fn k4_all_printed_reliability<R: Ring>(spec: &FamilySpec<R>) -> Result<R> {
    if spec.family != Family::K4AllTerminal {
        return Err(Error::Unsupported("the printed matrix is all-terminal only".into()));
    }
    reliability_with(k4_all_printed_table(), spec)
}

/// Number of node variables per cell (bound on the degree in rho of an entry).
pub fn rho_degree(family: Family) -> u32 {
    match family {
        Family::K4Ladder => 2,
        Family::K3Cylinder { .. } => 3,
        Family::K4AllTerminal => 0,
    }
}

/// Uniform cell matrices in `p` at a fixed rational rho, scaled by `den(rho)^k` to integer entries.
///
/// Returns `(M_0', M')` with `M_i = M_i' / den^k`.
pub fn scaled_uniform_matrices(family: Family, rho: &Rational) -> (Matrix<Poly<Integer>>, Matrix<Poly<Integer>>) {
    let p = Poly::<Rational>::var_in(Var::P);
    let r = Poly::constant(rho.clone(), Var::P);
    let spec = crate::graphs::uniform_spec(family, 1, &p, &r, family.default_destination()).expect("uniform spec");
    let scale = Rational::from(Integer::from(rho.denom().clone().pow(rho_degree(family))));
    let conv = |x: &Poly<Rational>| -> Poly<Integer> {
        x.scale(&scale).map(|c| {
            assert_eq!(*c.denom(), 1, "scaled entry must be integral");
            c.numer().clone()
        })
    };
    let m0 = cell_matrix(family, &spec.cells[0]).map(conv);
    let m1 = cell_matrix(family, &spec.cells[1]).map(conv);
    (m0, m1)
}

/// All of `R_0(p), …, R_n(p)` at a fixed rational rho by scaled integer matrix products.
pub fn reliability_polynomials(family: Family, n: usize, rho: &Rational, destination: Option<Destination>) -> Result<Vec<Poly<Rational>>> {
    let k = dest_index(family, destination)?;
    let (m0, m1) = scaled_uniform_matrices(family, rho);
    let unit = Rational::from(Integer::from(rho.denom().clone().pow(rho_degree(family))));
    let mut denom = unit.clone();
    let mut v = m0.column(0);
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if i > 0 {
            v = m1.mul_vec(&v);
            denom *= &unit;
        }
        let inv = Rational::from(denom.recip_ref());
        out.push(v[k].map(|c| Rational::from(c.clone()) * &inv).with_var(Var::P));
    }
    Ok(out)
}

/// `den(rho)^(k(n+1)) R_n(p)` as an integer polynomial, without intermediate rationals.
pub fn scaled_reliability_integer(family: Family, n: usize, rho: &Rational, destination: Option<Destination>) -> Result<Poly<Integer>> {
    let k = dest_index(family, destination)?;
    let (m0, m1) = scaled_uniform_matrices(family, rho);
    let mut v = m0.column(0);
    for _ in 0..n {
        v = m1.mul_vec(&v);
    }
    Ok(v.swap_remove(k).with_var(Var::P))
}

/// `R_n(p)` at a fixed rational rho by the matrix route.
pub fn reliability_polynomial(family: Family, n: usize, rho: &Rational, destination: Option<Destination>) -> Result<Poly<Rational>> {
    Ok(reliability_polynomials(family, n, rho, destination)?.pop().unwrap())
}

/// `∂Rel/∂x` for one element, from the formal derivative of the cell matrix that contains it.
pub fn partial_derivative<R: Ring>(spec: &FamilySpec<R>, id: ElementId) -> Result<R> {
    if !spec.elements().contains(&id) {
        return Err(Error::UnknownElement(id.to_string()));
    }
    let lifted: FamilySpec<Poly<R>> = spec.map(|v| Poly::constant(v.clone(), Var::X));
    let x = Poly::<R>::var_in(Var::X);
    let lifted = lifted.with_element(id, x)?;
    let rel = reliability(&lifted)?;
    Ok(rel.derivative().eval(&R::one()))
}

/// Failure rate per element; absent elements have rate zero.
pub type FailureModel = BTreeMap<ElementId, Rational>;

/// `ν = Σ λ_i p_i ∂Rel/∂p_i`.
pub fn failure_frequency(spec: &FamilySpec<Rational>, model: &FailureModel) -> Result<Rational> {
    let elems = spec.elements();
    let mut nu = Rational::new();
    for (id, rate) in model {
        if !elems.contains(id) {
            return Err(Error::UnknownElement(id.to_string()));
        }
        if rate.is_zero() {
            continue;
        }
        let d = partial_derivative(spec, *id)?;
        nu += Rational::from(rate * spec.get(*id)?) * d;
    }
    Ok(nu)
}
