//! Graded linear algebra of the map `(a, b, c) ↦ a·f_x + b·f_y + c·f_z`,
//! written once over [`LinearField`].

use std::collections::HashMap;

use crate::algebra::matrix::{kernel_from_echelon, rank, rref};
use crate::algebra::{LinearField, MPoly, Monomial, Var};

/// Monomials of one degree in graded-lex descending order, with an index.
pub(crate) struct Basis {
    pub monos: Vec<[u32; 3]>,
    index: HashMap<[u32; 3], usize>,
}

impl Basis {
    pub fn of_degree(k: u32) -> Self {
        let monos: Vec<[u32; 3]> = Monomial::of_degree(k).into_iter().map(|m| m.0).collect();
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Basis { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    fn position(&self, m: [u32; 3]) -> usize {
        self.index[&m]
    }
}

fn add(a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Coefficients of the three partial derivatives in some field.
pub(crate) struct Gradient<E> {
    pub terms: [Vec<([u32; 3], E)>; 3],
    /// Degree of the curve.
    pub degree: u32,
}

impl<E> Gradient<E> {
    /// Maps the partials of `f` coefficientwise; `None` if some coefficient
    /// has no image.
    pub fn from_poly(
        f: &MPoly,
        map: impl Fn(&crate::algebra::FieldElement) -> Option<E>,
    ) -> Option<Self> {
        let degree = f.total_degree().unwrap_or(0);
        let mut terms: [Vec<([u32; 3], E)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (slot, v) in Var::ALL.iter().enumerate() {
            for (m, c) in f.partial(*v).terms() {
                terms[slot].push((m.0, map(c)?));
            }
        }
        Some(Gradient { terms, degree })
    }
}

/// Rows of the matrix of `S_k³ → S_{k+d−1}`; column `j·|S_k| + i` holds the
/// `i`-th monomial in the `j`-th slot.
pub(crate) fn equation_rows<F: LinearField>(
    field: &F,
    grad: &Gradient<F::Elem>,
    src: &Basis,
    dst: &Basis,
) -> Vec<Vec<F::Elem>> {
    let cols = 3 * src.len();
    let mut rows = vec![vec![field.zero(); cols]; dst.len()];
    for (j, part) in grad.terms.iter().enumerate() {
        for (i, m) in src.monos.iter().enumerate() {
            for (e, c) in part {
                rows[dst.position(add(*m, *e))][j * src.len() + i] = c.clone();
            }
        }
    }
    rows
}

/// `u·v` for a syzygy `v` of degree `src` and a monomial `u`.
pub(crate) fn shift_vector<F: LinearField>(
    field: &F,
    v: &[F::Elem],
    src: &Basis,
    dst: &Basis,
    u: [u32; 3],
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); 3 * dst.len()];
    for j in 0..3 {
        for (i, m) in src.monos.iter().enumerate() {
            let c = &v[j * src.len() + i];
            if !field.is_zero(c) {
                out[j * dst.len() + dst.position(add(*m, u))] = c.clone();
            }
        }
    }
    out
}

/// A growing subspace kept in echelon form.
pub(crate) struct Span<E> {
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone> Span<E> {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert<F: LinearField<Elem = E>>(&mut self, field: &F, mut v: Vec<E>) -> bool {
        for (pc, row) in &self.rows {
            if field.is_zero(&v[*pc]) {
                continue;
            }
            let f = v[*pc].clone();
            for (j, r) in row.iter().enumerate().skip(*pc) {
                if !field.is_zero(r) {
                    v[j] = field.sub_mul(&v[j], &f, r);
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[pc]);
        for x in v.iter_mut().skip(pc) {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pc);
        self.rows.insert(at, (pc, v));
        true
    }
}

/// Per-degree outcome of the generator count.
pub(crate) struct Counting<E> {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub mu: Vec<usize>,
    pub generators: Vec<(u32, Vec<E>)>,
}

/// Optional fast path producing exact kernel vectors for degree `k`, given
/// the pivot columns found over the checking field and the free columns
/// whose kernel vectors are wanted.
pub(crate) type Lift<'a, E> = dyn Fn(u32, &[usize], &[usize]) -> Option<Vec<Vec<E>>> + 'a;

/// A generator whose image in the checking field does not exist.
pub(crate) struct ReductionFailed;

/// Counts minimal generators degree by degree.
///
/// In each degree the kernel dimension over the checking field `C` bounds
/// the true dimension from above, while the span of the multiples of the
/// generators found so far (reduced into `C`) bounds it from below.  When
/// the two agree no new generator exists; otherwise the kernel is computed
/// over the generator field `G` and completed against the multiples.
pub(crate) fn count_generators<C: LinearField, G: LinearField>(
    check: &C,
    exact: &G,
    grad_check: &Gradient<C::Elem>,
    grad_exact: &Gradient<G::Elem>,
    reduce: &dyn Fn(&G::Elem) -> Option<C::Elem>,
    lift: &Lift<'_, G::Elem>,
    k_max: u32,
) -> Result<Counting<G::Elem>, ReductionFailed> {
    let d = grad_exact.degree;
    let bases: Vec<Basis> = (0..=k_max + d).map(Basis::of_degree).collect();
    let mut out = Counting { dims: Vec::new(), ranks: Vec::new(), mu: Vec::new(), generators: Vec::new() };
    let mut reduced: Vec<(u32, Vec<C::Elem>)> = Vec::new();
    for k in 0..=k_max {
        let src = &bases[k as usize];
        let dst = &bases[(k + d - 1) as usize];
        let cols = 3 * src.len();
        let check_rank = rank(check, equation_rows(check, grad_check, src, dst), cols);
        let upper = cols - check_rank;
        let mut lower = Span::new();
        for (e, g) in &reduced {
            for u in &bases[(k - e) as usize].monos {
                lower.insert(check, shift_vector(check, g, &bases[*e as usize], src, *u));
                if lower.dim() == upper {
                    break;
                }
            }
            if lower.dim() == upper {
                break;
            }
        }
        if lower.dim() == upper {
            out.dims.push(upper);
            out.ranks.push(check_rank);
            out.mu.push(0);
            continue;
        }
        let mut span = Span::new();
        for (e, g) in &out.generators {
            for u in &bases[(k - e) as usize].monos {
                span.insert(exact, shift_vector(exact, g, &bases[*e as usize], src, *u));
            }
        }
        let check_ech = rref(check, equation_rows(check, grad_check, src, dst), cols);
        let free: Vec<usize> = (0..cols).filter(|c| !check_ech.pivots.contains(c)).collect();
        let mut chosen = Vec::new();
        for (v, &col) in kernel_from_echelon(check, &check_ech).into_iter().zip(&free) {
            if lower.dim() == upper {
                break;
            }
            if lower.insert(check, v) {
                chosen.push(col);
            }
        }
        if let Some(candidates) = lift(k, &check_ech.pivots, &chosen) {
            let before = span.dim();
            let mut fresh = Vec::new();
            for v in candidates {
                if span.insert(exact, v.clone()) {
                    fresh.push(v);
                }
            }
            if span.dim() == upper {
                for v in fresh {
                    let r: Vec<C::Elem> = v.iter().map(reduce).collect::<Option<_>>().ok_or(ReductionFailed)?;
                    reduced.push((k, r));
                    out.generators.push((k, v));
                }
                out.dims.push(upper);
                out.ranks.push(check_rank);
                out.mu.push(span.dim() - before);
                continue;
            }
        }
        let ech = rref(exact, equation_rows(exact, grad_exact, src, dst), cols);
        let kernel = kernel_from_echelon(exact, &ech);
        let mut added = 0;
        for v in kernel.iter() {
            if span.dim() == kernel.len() {
                break;
            }
            if span.insert(exact, v.clone()) {
                let r: Vec<C::Elem> = v.iter().map(reduce).collect::<Option<_>>().ok_or(ReductionFailed)?;
                reduced.push((k, r));
                out.generators.push((k, v.clone()));
                added += 1;
            }
        }
        out.dims.push(kernel.len());
        out.ranks.push(ech.rank());
        out.mu.push(added);
    }
    Ok(out)
}
