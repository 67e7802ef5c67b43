use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::fan::{to_rational, Fan};
use super::ToricError;
use crate::lattice::{smith_normal_form, IntegerMatrix, LatticeVector, RationalMatrix};

/// Torus-invariant Weil divisor `sum a_rho D_rho`, one coefficient per ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToricDivisor {
    #[serde(with = "super::json::bigint_vec")]
    pub coeffs: Vec<BigInt>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(crate::lattice::ivec(coeffs))
    }

    /// The prime divisor of ray `i`.
    pub fn of_ray(fan: &Fan, i: usize) -> Self {
        Self::new(
            (0..fan.rays().len())
                .map(|j| BigInt::from(i32::from(i == j)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// One linear functional per maximal cone, taking the value `-a_rho` on
/// every ray `rho` of that cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    pub functionals: Vec<Vec<BigRational>>,
}

impl SupportFunction {
    pub fn is_integral(&self) -> bool {
        self.functionals.iter().flatten().all(BigRational::is_integer)
    }

    pub fn eval(&self, cone: usize, v: &[BigRational]) -> BigRational {
        self.functionals[cone].iter().zip(v).map(|(m, x)| m * x).sum()
    }
}

/// `Z^{#rays} / M`, a finitely generated abelian group `Z^free_rank (+) torsion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupPresentation {
    pub free_rank: usize,
    /// invariant factors > 1
    pub torsion: Vec<BigInt>,
    /// class of each `D_rho`: torsion coordinates first, then free ones
    pub ray_to_class: Vec<Vec<BigInt>>,
    transform: IntegerMatrix,
    diagonal: Vec<BigInt>,
}

impl ClassGroupPresentation {
    /// Coordinates of the class of `d`, reduced modulo the torsion orders.
    pub fn class_of(&self, d: &ToricDivisor) -> Vec<BigInt> {
        let y = self.transform.apply(&d.coeffs).expect("divisor length checked");
        let mut out = Vec::new();
        for (i, yi) in y.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(di) if di.is_one() => {}
                Some(di) if !di.is_zero() => out.push(yi.mod_floor(di)),
                _ => out.push(yi.clone()),
            }
        }
        out
    }

    /// Whether the class of `d` lies in `k * Cl`.
    pub fn is_divisible(&self, d: &ToricDivisor, k: &BigInt) -> bool {
        let y = self.transform.apply(&d.coeffs).expect("divisor length checked");
        y.iter().enumerate().all(|(i, yi)| match self.diagonal.get(i) {
            Some(di) if di.is_one() => true,
            // Z/d: y lies in k (Z/d) iff gcd(k, d) | y
            Some(di) if !di.is_zero() => yi.is_multiple_of(&k.gcd(di)),
            _ => yi.is_multiple_of(k),
        })
    }
}

/// Discrepancy of one exceptional ray of a refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub ray: LatticeVector,
    pub value: BigRational,
}

pub fn is_crepant(discrepancies: &[Discrepancy]) -> bool {
    discrepancies.iter().all(|d| d.value.is_zero())
}

impl Fan {
    fn check_divisor(&self, d: &ToricDivisor) -> Result<(), ToricError> {
        if d.coeffs.len() != self.rays().len() {
            return Err(ToricError::DivisorLength {
                expected: self.rays().len(),
                found: d.coeffs.len(),
            });
        }
        Ok(())
    }

    /// `K = -sum D_rho`.
    pub fn canonical_divisor(&self) -> ToricDivisor {
        ToricDivisor::new(vec![BigInt::from(-1); self.rays().len()])
    }

    /// Rational per-cone functionals; always exists for simplicial fans.
    pub fn q_cartier_support_function(&self, d: &ToricDivisor) -> Result<SupportFunction, ToricError> {
        self.check_divisor(d)?;
        let functionals = self
            .max_cones()
            .iter()
            .map(|cone| {
                let a = RationalMatrix::from_integer(&self.ray_matrix(cone));
                let b: Vec<BigRational> = cone
                    .iter()
                    .map(|&r| BigRational::from_integer(-&d.coeffs[r]))
                    .collect();
                a.solve(&b)?.ok_or_else(|| ToricError::DependentCone(cone.clone()))
            })
            .collect::<Result<_, ToricError>>()?;
        Ok(SupportFunction { functionals })
    }

    /// Integral support function when `d` is Cartier.
    pub fn cartier_support_function(&self, d: &ToricDivisor) -> Result<Option<SupportFunction>, ToricError> {
        self.check_divisor(d)?;
        let mut functionals = Vec::with_capacity(self.max_cones().len());
        for cone in self.max_cones() {
            let a = self.ray_matrix(cone);
            let b: LatticeVector = cone.iter().map(|&r| -&d.coeffs[r]).collect();
            match solve_integral(&a, &b) {
                Some(m) => functionals.push(to_rational(&m)),
                None => return Ok(None),
            }
        }
        Ok(Some(SupportFunction { functionals }))
    }

    pub fn is_cartier(&self, d: &ToricDivisor) -> Result<bool, ToricError> {
        Ok(self.cartier_support_function(d)?.is_some())
    }

    /// `Z^{#rays}` modulo the image of the character lattice `m -> (<m, u_rho>)`.
    pub fn class_group(&self) -> Result<ClassGroupPresentation, ToricError> {
        let r = IntegerMatrix::from_rows(self.rays())?;
        if r.rank() < self.rank() {
            return Err(ToricError::RaysDoNotSpan);
        }
        let snf = smith_normal_form(&r);
        let diagonal = snf.diagonal();
        let torsion: Vec<BigInt> = diagonal.iter().filter(|d| *d > &BigInt::one()).cloned().collect();
        let free_rank = self.rays().len() - self.rank();
        let mut pres = ClassGroupPresentation {
            free_rank,
            torsion,
            ray_to_class: Vec::new(),
            transform: snf.u,
            diagonal,
        };
        pres.ray_to_class = (0..self.rays().len())
            .map(|i| pres.class_of(&ToricDivisor::of_ray(self, i)))
            .collect();
        Ok(pres)
    }

    pub fn is_divisible_in_class_group(&self, d: &ToricDivisor, k: u64) -> Result<bool, ToricError> {
        self.check_divisor(d)?;
        if k == 0 {
            return Err(ToricError::ZeroDivisor);
        }
        Ok(self.class_group()?.is_divisible(d, &BigInt::from(k)))
    }

    /// Compare each cone's functional with the support function on the ray
    /// across every wall. Returns `(nef, ample)`.
    fn wall_convexity(&self, d: &ToricDivisor) -> Result<(bool, bool), ToricError> {
        if !self.is_complete() {
            return Err(ToricError::NotComplete);
        }
        let phi = self.q_cartier_support_function(d)?;
        let mut nef = true;
        let mut ample = true;
        for (facet, owners) in self.walls() {
            for (here, there) in [(owners[0], owners[1]), (owners[1], owners[0])] {
                let across = *self.max_cones()[there]
                    .iter()
                    .find(|r| !facet.contains(r))
                    .expect("wall has an opposite ray");
                let lhs = phi.eval(here, &to_rational(self.ray(across)));
                let rhs = BigRational::from_integer(-&d.coeffs[across]);
                if lhs < rhs {
                    nef = false;
                }
                if lhs <= rhs {
                    ample = false;
                }
            }
        }
        Ok((nef, ample))
    }

    pub fn is_nef(&self, d: &ToricDivisor) -> Result<bool, ToricError> {
        Ok(self.wall_convexity(d)?.0)
    }

    pub fn is_ample(&self, d: &ToricDivisor) -> Result<bool, ToricError> {
        Ok(self.wall_convexity(d)?.1)
    }

    pub fn is_fano(&self) -> Result<bool, ToricError> {
        self.is_ample(&self.canonical_divisor().neg())
    }

    /// Checks that `self` refines `coarse`: same support, every cone of
    /// `self` inside a cone of `coarse`.
    pub fn refines(&self, coarse: &Fan) -> Result<(), ToricError> {
        if self.rank() != coarse.rank() {
            return Err(ToricError::NotARefinement("lattice ranks differ".into()));
        }
        // inside[ci][r]: ray r of self lies in coarse cone ci
        let inside: Vec<Vec<bool>> = (0..coarse.max_cones().len())
            .map(|ci| {
                self.rays()
                    .iter()
                    .map(|v| {
                        coarse
                            .locate_in(ci, &to_rational(v))
                            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
                    })
                    .collect()
            })
            .collect();
        for cone in self.max_cones() {
            let inside = inside.iter().any(|row| cone.iter().all(|&r| row[r]));
            if !inside {
                return Err(ToricError::NotARefinement(format!(
                    "cone {cone:?} is not contained in a cone of the coarse fan"
                )));
            }
        }
        for cone in coarse.max_cones() {
            let mut p = vec![BigInt::zero(); coarse.rank()];
            for &r in cone {
                for (acc, x) in p.iter_mut().zip(coarse.ray(r)) {
                    *acc += x;
                }
            }
            if !self.contains_point(&to_rational(&p)) {
                return Err(ToricError::NotARefinement(format!(
                    "coarse cone {cone:?} is not covered"
                )));
            }
        }
        Ok(())
    }
}

impl Fan {
    pub(crate) fn locate_in(&self, cone: usize, p: &[BigRational]) -> Option<Vec<BigRational>> {
        let gens = self.max_cones()[cone].clone();
        let a = RationalMatrix::from_integer(&self.ray_matrix(&gens)).transpose();
        let c = a.solve(p).ok()??;
        Some(c)
    }
}

/// Discrepancy `phi_K(v) - 1` of every ray of `fine` that is not a ray of
/// `coarse`, where `phi_K` is the piecewise linear function equal to 1 on the
/// primitive rays of `coarse`.
pub fn discrepancies(coarse: &Fan, fine: &Fan) -> Result<Vec<Discrepancy>, ToricError> {
    fine.refines(coarse)?;
    let phi = coarse.q_cartier_support_function(&coarse.canonical_divisor())?;
    let mut out = Vec::new();
    for v in fine.rays() {
        if coarse.ray_index(v).is_some() {
            continue;
        }
        let q = to_rational(v);
        let (cone, _) = coarse
            .locate(&q)
            .ok_or_else(|| ToricError::OutsideSupport(v.clone()))?;
        out.push(Discrepancy {
            ray: v.clone(),
            value: phi.eval(cone, &q) - BigRational::one(),
        });
    }
    Ok(out)
}

/// Integral solution of `A m = b` (A has full row rank), via Smith form.
fn solve_integral(a: &IntegerMatrix, b: &[BigInt]) -> Option<LatticeVector> {
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b).ok()?;
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                if !rhs.is_multiple_of(d) {
                    return None;
                }
                y[i] = rhs / d;
            }
            _ => {
                if !rhs.is_zero() {
                    return None;
                }
            }
        }
    }
    snf.v.apply(&y).ok()
}
