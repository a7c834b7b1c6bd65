use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::morphism::{int_matrix, normal_entry};
use super::{compose, FpModule, FpObject, Morphism};
use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::matops::{self, ExactMatrix};

/// Kernel and image factorization of an additive morphism `f = j ∘ f′`.
#[derive(Clone, Debug)]
pub struct SubobjectSplit {
    pub kernel_inclusion: Morphism,
    /// `j`, a monomorphism into the codomain.
    pub image_inclusion: Morphism,
    /// `f′`, an epimorphism onto the image.
    pub corestriction: Morphism,
}

impl SubobjectSplit {
    pub fn kernel_object(&self) -> &FpObject {
        self.kernel_inclusion.domain()
    }

    pub fn image_object(&self) -> &FpObject {
        self.image_inclusion.domain()
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: FpObject,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Solves `A x ≡ b` row by row modulo `moduli` (0 meaning equality over Z)
/// for each right-hand side in `b`.
pub(crate) fn solve_congruences(
    a: &ExactMatrix,
    b: &[Vec<BigInt>],
    moduli: &[BigInt],
) -> Result<Option<Vec<Vec<BigInt>>>> {
    let (rows, cols) = a.shape();
    let slack: Vec<usize> = (0..rows).filter(|&i| !moduli[i].is_zero()).collect();
    let width = cols + slack.len();
    let mut data = vec![BigInt::zero(); rows * width];
    for i in 0..rows {
        for j in 0..cols {
            data[i * width + j] = normal_entry(a, i, j);
        }
    }
    for (k, &i) in slack.iter().enumerate() {
        data[i * width + cols + k] = moduli[i].clone();
    }
    Ok(matops::solve_systems(rows, width, &data, b)
        .map(|xs| xs.into_iter().map(|mut x| {
            x.truncate(cols);
            x
        }).collect()))
}

fn unit(len: usize, at: usize) -> Vec<BigInt> {
    (0..len).map(|e| if e == at { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Coordinate indices grouped by equal order, in order of first appearance.
fn group_by_order(orders: &[BigInt]) -> Vec<(BigInt, Vec<usize>)> {
    let mut groups: Vec<(BigInt, Vec<usize>)> = Vec::new();
    for (i, o) in orders.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| g == o) {
            Some((_, v)) => v.push(i),
            None => groups.push((o.clone(), vec![i])),
        }
    }
    groups
}

fn module_of(obj: &FpObject) -> Result<&FpModule> {
    obj.as_module().ok_or(Error::NotAdditive)
}

/// Subobject of `m` generated by the columns of `gens` (normal coordinates),
/// with its inclusion and the map from the generating columns onto it.
pub(crate) fn submodule(m: &Arc<FpObject>, gens: &ExactMatrix) -> Result<(Morphism, ExactMatrix)> {
    let mm = module_of(m)?;
    let s = gens.cols();
    let d = mm.relation_diagonal();
    let aug = ExactMatrix::hstack(Ring::Integer, mm.dim(), &[gens, &d])?;
    let ker = matops::kernel_basis(&aug)?;
    let keep: Vec<usize> = (0..ker.cols())
        .filter(|&c| (0..s).any(|i| !ker.get(i, c).is_zero()))
        .collect();
    let rel = ker.select(&(0..s).collect::<Vec<_>>(), &keep);
    let sub = FpModule::new(mm.base(), s, rel.cast(mm.base()).expect("integer relations"))?;
    let incl = gens * &sub.from_normal();
    let onto = sub.to_normal();
    let sub = Arc::new(FpObject::Module(sub));
    Ok((Morphism::from_normal(sub, m.clone(), incl), onto))
}

/// Kernel object and its inclusion into the domain.
pub fn kernel(f: &Morphism) -> Result<Morphism> {
    let n = f.normal_matrix()?;
    match f.domain() {
        FpObject::Vect { ring, .. } => {
            let k = matops::kernel_basis(n)?;
            let obj = Arc::new(FpObject::Vect { ring: *ring, dim: k.cols() });
            Ok(Morphism::from_normal(obj, f.domain_arc().clone(), k))
        }
        FpObject::Module(u) => {
            let m = module_of(f.codomain())?;
            let aug = ExactMatrix::hstack(Ring::Integer, m.dim(), &[n, &m.relation_diagonal()])?;
            let ker = matops::kernel_basis(&aug)?;
            let gens = ker.select_rows(&(0..u.dim()).collect::<Vec<_>>());
            Ok(submodule(f.domain_arc(), &gens)?.0)
        }
        FpObject::FinSet(_) => Err(Error::NotAdditive),
    }
}

/// Image factorization `f = j ∘ f′` together with the kernel.
pub fn image(f: &Morphism) -> Result<SubobjectSplit> {
    split(f)
}

pub fn split(f: &Morphism) -> Result<SubobjectSplit> {
    let (image_inclusion, corestriction) = factor_through_image(f)?;
    Ok(SubobjectSplit {
        kernel_inclusion: kernel(f)?,
        image_inclusion,
        corestriction,
    })
}

/// `(j, f′)` with `f = j ∘ f′`, `j` mono and `f′` epi.
pub fn factor_through_image(f: &Morphism) -> Result<(Morphism, Morphism)> {
    let n = f.normal_matrix()?;
    let (image_inclusion, corestriction) = match f.domain() {
        FpObject::Vect { ring, .. } => {
            let e = matops::rref(n)?;
            let r = e.rank();
            let obj = Arc::new(FpObject::Vect { ring: *ring, dim: r });
            let j = Morphism::from_normal(obj.clone(), f.codomain_arc().clone(), n.select_cols(&e.pivots));
            let fp = e.r.select_rows(&(0..r).collect::<Vec<_>>());
            (j, Morphism::from_normal(f.domain_arc().clone(), obj, fp))
        }
        FpObject::Module(_) => {
            let (j, onto) = submodule(f.codomain_arc(), n)?;
            let fp = Morphism::from_normal(f.domain_arc().clone(), j.domain_arc().clone(), onto);
            (j, fp)
        }
        FpObject::FinSet(_) => return Err(Error::NotAdditive),
    };
    debug_assert_eq!(&compose(&image_inclusion, &corestriction)?, f);
    Ok((image_inclusion, corestriction))
}

pub fn is_mono(f: &Morphism) -> Result<bool> {
    if let Some(map) = f.map_table() {
        let mut seen = vec![false; f.codomain().coords()];
        return Ok(map.iter().all(|&x| !std::mem::replace(&mut seen[x], true)));
    }
    Ok(kernel(f)?.domain().is_zero())
}

pub fn is_epi(f: &Morphism) -> Result<bool> {
    if let Some(map) = f.map_table() {
        let mut seen = vec![false; f.codomain().coords()];
        map.iter().for_each(|&x| seen[x] = true);
        return Ok(seen.into_iter().all(|s| s));
    }
    let n = f.normal_matrix()?;
    match f.codomain() {
        FpObject::Vect { dim, .. } => Ok(matops::rank(n)? == *dim),
        FpObject::Module(m) => {
            let aug = ExactMatrix::hstack(Ring::Integer, m.dim(), &[n, &m.relation_diagonal()])?;
            let coker = FpModule::new(Ring::Integer, m.dim(), aug)?;
            Ok(coker.is_zero())
        }
        FpObject::FinSet(_) => unreachable!(),
    }
}

/// `⊕` of objects of one additive category with its injections and
/// projections.
pub fn direct_sum(objects: &[FpObject]) -> Result<DirectSum> {
    let first = objects.first().ok_or_else(|| Error::spec("direct sum of an empty list"))?;
    if !first.is_additive() {
        return Err(Error::NotAdditive);
    }
    if objects.iter().any(|o| !o.same_category(first)) {
        return Err(Error::MixedVariant);
    }
    let ring = first.base().unwrap();
    let sizes: Vec<usize> = objects
        .iter()
        .map(|o| match o {
            FpObject::Module(m) => m.gens(),
            other => other.coords(),
        })
        .collect();
    let total: usize = sizes.iter().sum();
    let object = match first {
        FpObject::Vect { .. } => FpObject::Vect { ring, dim: total },
        _ => {
            let rels: Vec<&ExactMatrix> = objects.iter().map(|o| o.as_module().unwrap().relations()).collect();
            FpObject::module(ring, total, ExactMatrix::block_diagonal(ring, &rels))?
        }
    };
    let sum = Arc::new(object.clone());
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for (o, &k) in objects.iter().zip(&sizes) {
        let part = Arc::new(o.clone());
        let mut inj = ExactMatrix::zeros(ring, total, k);
        for t in 0..k {
            inj.set(offset + t, t, ring.one());
        }
        let proj = inj.transpose();
        injections.push(Morphism::from_user(part.clone(), sum.clone(), inj)?);
        projections.push(Morphism::from_user(sum.clone(), part, proj)?);
        offset += k;
    }
    Ok(DirectSum {
        object,
        injections,
        projections,
    })
}

/// `r` with `r ∘ i = id`, or `None` when the image of `i` is not a direct
/// summand.
pub fn find_retraction(i: &Morphism) -> Result<Option<Morphism>> {
    if !is_mono(i)? {
        return Err(Error::NotMono);
    }
    retraction_of_mono(i)
}

/// [`find_retraction`] for a morphism already known to be mono.
pub(crate) fn retraction_of_mono(i: &Morphism) -> Result<Option<Morphism>> {
    let n = i.normal_matrix()?;
    let r = match (i.domain(), i.codomain()) {
        (FpObject::Vect { dim, .. }, FpObject::Vect { .. }) => {
            let e = matops::rref(n)?;
            e.t.select_rows(&(0..*dim).collect::<Vec<_>>())
        }
        (FpObject::Module(k), FpObject::Module(m)) => {
            let km = m.dim();
            let torsion: Vec<usize> = (0..km).filter(|&j| !m.orders()[j].is_zero()).collect();
            let mut rows = ExactMatrix::zeros(Ring::Integer, k.dim(), km);
            // row a of r is y ∈ Z^km with o_j y_j ≡ 0 and y·n[:, b] ≡ δ_ab
            // modulo q_a; rows sharing q_a share one system
            let eqs = torsion.len() + k.dim();
            let coeff = int_matrix(eqs, km, |e, j| {
                if e < torsion.len() {
                    if torsion[e] == j {
                        m.orders()[j].clone()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    normal_entry(n, j, e - torsion.len())
                }
            });
            for (q, group) in group_by_order(k.orders()) {
                let rhs: Vec<Vec<BigInt>> = group.iter().map(|&a| unit(eqs, torsion.len() + a)).collect();
                let Some(ys) = solve_congruences(&coeff, &rhs, &vec![q; eqs])? else {
                    return Ok(None);
                };
                for (&a, y) in group.iter().zip(&ys) {
                    for (j, v) in y.iter().enumerate() {
                        rows.set(a, j, Ring::Integer.from_bigint(v));
                    }
                }
            }
            rows
        }
        _ => return Err(Error::NotAdditive),
    };
    let r = Morphism::from_normal(i.codomain_arc().clone(), i.domain_arc().clone(), r);
    debug_assert!(compose(&r, i)?.is_identity());
    Ok(Some(r))
}

/// `s` with `p ∘ s = id`, or `None` when `p` does not split.
pub fn find_section(p: &Morphism) -> Result<Option<Morphism>> {
    if !is_epi(p)? {
        return Err(Error::NotEpi);
    }
    section_of_epi(p)
}

/// [`find_section`] for a morphism already known to be epi.
pub(crate) fn section_of_epi(p: &Morphism) -> Result<Option<Morphism>> {
    let n = p.normal_matrix()?;
    let s = match (p.domain(), p.codomain()) {
        (FpObject::Vect { ring, .. }, FpObject::Vect { dim, .. }) => {
            matops::solve(n, &ExactMatrix::identity(*ring, *dim))?.expect("epimorphisms of vector spaces split")
        }
        (FpObject::Module(m), FpObject::Module(q)) => {
            let km = m.dim();
            let kq = q.dim();
            let mut cols = ExactMatrix::zeros(Ring::Integer, km, kq);
            // column b of s is x ∈ Z^km with r_b x ≡ 0 in M and n x ≡ e_b in N
            let eqs = km + kq;
            let moduli: Vec<BigInt> = m.orders().iter().chain(q.orders()).cloned().collect();
            for (rb, group) in group_by_order(q.orders()) {
                let coeff = int_matrix(eqs, km, |e, a| {
                    if e < km {
                        if e == a {
                            rb.clone()
                        } else {
                            BigInt::zero()
                        }
                    } else {
                        normal_entry(n, e - km, a)
                    }
                });
                let rhs: Vec<Vec<BigInt>> = group.iter().map(|&b| unit(eqs, km + b)).collect();
                let Some(xs) = solve_congruences(&coeff, &rhs, &moduli)? else {
                    return Ok(None);
                };
                for (&b, x) in group.iter().zip(&xs) {
                    for (a, v) in x.iter().enumerate() {
                        cols.set(a, b, Ring::Integer.from_bigint(v));
                    }
                }
            }
            cols
        }
        _ => return Err(Error::NotAdditive),
    };
    let s = Morphism::from_normal(p.codomain_arc().clone(), p.domain_arc().clone(), s);
    debug_assert!(compose(p, &s)?.is_identity());
    Ok(Some(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(orders: &[u64]) -> FpObject {
        FpObject::cyclic(Ring::Integer, orders).unwrap()
    }

    fn zmor(u: &FpObject, m: &FpObject, rows: &[Vec<i64>]) -> Morphism {
        Morphism::new(u.clone(), m.clone(), ExactMatrix::from_rows(Ring::Integer, rows)).unwrap()
    }

    #[test]
    fn kernel_over_q() {
        let q = Ring::Rational;
        let f = Morphism::new(
            FpObject::vect(q, 2).unwrap(),
            FpObject::vect(q, 1).unwrap(),
            ExactMatrix::from_rows(q, &[vec![1, 1]]),
        )
        .unwrap();
        let k = kernel(&f).unwrap();
        assert_eq!(k.domain(), &FpObject::vect(q, 1).unwrap());
        assert_eq!(k.normal().unwrap(), &ExactMatrix::from_rows(q, &[vec![1], vec![-1]]));
        assert!(compose(&f, &k).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_reduction_mod_two() {
        let f = zmor(&z(&[4]), &z(&[2]), &[vec![1]]);
        let k = kernel(&f).unwrap();
        assert_eq!(k.domain(), &z(&[2]));
        assert_eq!(k.matrix().unwrap(), ExactMatrix::from_rows(Ring::Integer, &[vec![2]]));
        assert!(is_mono(&k).unwrap());
        assert!(kernel(&Morphism::identity(&z(&[4]))).unwrap().domain().is_zero());
    }

    #[test]
    fn image_over_q() {
        let q = Ring::Rational;
        let v2 = FpObject::vect(q, 2).unwrap();
        let f = Morphism::new(v2.clone(), v2, ExactMatrix::from_rows(q, &[vec![1, 2], vec![2, 4]])).unwrap();
        let s = image(&f).unwrap();
        assert_eq!(s.image_object().coords(), 1);
        assert_eq!(s.image_inclusion.normal().unwrap(), &ExactMatrix::from_rows(q, &[vec![1], vec![2]]));
        assert_eq!(s.corestriction.normal().unwrap(), &ExactMatrix::from_rows(q, &[vec![1, 2]]));
        assert_eq!(compose(&s.image_inclusion, &s.corestriction).unwrap(), f);
    }

    #[test]
    fn image_of_zero_and_of_epi() {
        let m = z(&[2, 4]);
        let s = image(&Morphism::zero(&m, &m).unwrap()).unwrap();
        assert!(s.image_object().is_zero());
        let p = zmor(&z(&[4]), &z(&[2]), &[vec![1]]);
        let s = image(&p).unwrap();
        assert_eq!(s.image_object(), &z(&[2]));
        assert!(is_epi(&s.image_inclusion).unwrap() && is_mono(&s.image_inclusion).unwrap());
        assert!(is_epi(&s.corestriction).unwrap());
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&[z(&[2]), z(&[4])]).unwrap();
        assert_eq!(s.object, z(&[2, 4]));
        let n = s.injections.len();
        for a in 0..n {
            for b in 0..n {
                let c = compose(&s.projections[a], &s.injections[b]).unwrap();
                assert_eq!(c.is_identity(), a == b);
                assert_eq!(c.is_zero(), a != b);
            }
        }
        let total = (0..n)
            .map(|k| compose(&s.injections[k], &s.projections[k]).unwrap())
            .reduce(|a, b| a.checked_add(&b).unwrap())
            .unwrap();
        assert!(total.is_identity());
        assert_eq!(direct_sum(&[z(&[]), z(&[3])]).unwrap().object, z(&[3]));
        let q = Ring::Rational;
        let v = direct_sum(&[FpObject::vect(q, 1).unwrap(), FpObject::vect(q, 2).unwrap()]).unwrap();
        assert_eq!(v.object, FpObject::vect(q, 3).unwrap());
        assert_eq!(direct_sum(&[z(&[2]), FpObject::vect(q, 1).unwrap()]).unwrap_err(), Error::MixedVariant);
    }

    #[test]
    fn retraction_examples() {
        let i = zmor(&z(&[2]), &z(&[4]), &[vec![2]]);
        assert!(find_retraction(&i).unwrap().is_none());
        let s = direct_sum(&[z(&[2]), z(&[4])]).unwrap();
        let r = find_retraction(&s.injections[0]).unwrap().unwrap();
        assert!(compose(&r, &s.injections[0]).unwrap().is_identity());
        let p = zmor(&z(&[4]), &z(&[2]), &[vec![1]]);
        assert_eq!(find_retraction(&p).unwrap_err(), Error::NotMono);
    }

    #[test]
    fn section_examples() {
        let p = zmor(&z(&[4]), &z(&[2]), &[vec![1]]);
        assert!(find_section(&p).unwrap().is_none());
        let id = Morphism::identity(&z(&[6]));
        assert_eq!(find_section(&id).unwrap().unwrap(), id);
        let s = direct_sum(&[z(&[2]), z(&[3])]).unwrap();
        let sec = find_section(&s.projections[0]).unwrap().unwrap();
        assert_eq!(sec, s.injections[0]);
        let i = zmor(&z(&[2]), &z(&[4]), &[vec![2]]);
        assert_eq!(find_section(&i).unwrap_err(), Error::NotEpi);
    }

    #[test]
    fn field_monos_retract() {
        let f3 = Ring::prime(3).unwrap();
        let i = Morphism::new(
            FpObject::vect(f3, 1).unwrap(),
            FpObject::vect(f3, 3).unwrap(),
            ExactMatrix::from_rows(f3, &[vec![0], vec![2], vec![1]]),
        )
        .unwrap();
        let r = find_retraction(&i).unwrap().unwrap();
        assert!(compose(&r, &i).unwrap().is_identity());
    }

    #[test]
    fn infinite_modules() {
        let zz = z(&[0]);
        let two = zmor(&zz, &zz, &[vec![2]]);
        assert!(is_mono(&two).unwrap());
        assert!(!is_epi(&two).unwrap());
        assert!(find_retraction(&two).unwrap().is_none());
        let p = zmor(&zz, &z(&[3]), &[vec![1]]);
        assert!(find_section(&p).unwrap().is_none());
        assert_eq!(kernel(&p).unwrap().matrix().unwrap(), ExactMatrix::from_rows(Ring::Integer, &[vec![3]]));
    }
}
