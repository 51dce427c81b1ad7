//! Positive-cone geometry for rank-2 lattices of signature (1,1):
//! isotropic boundary rays, candidate walls orthogonal to admissible
//! negative classes, the chamber decomposition they cut out, and
//! roundness certificates.
//!
//! The projective cross-section of the positive cone is an open arc on
//! the circle of directions, bounded by the two real isotropic rays. The
//! arc may pass through the vertical direction, so ordering along it is
//! done with an explicit frame rather than raw slopes. All ray
//! comparisons are exact surd arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isotropy::graded_box;
use crate::lattice::{canonical_sign, GramLattice, IntVector};
use crate::linalg;
use crate::surd::{QuadExt, SurdRay};

/// Admissible negative squares for candidate wall classes: either an
/// explicit finite set, or a bound C meaning every square in [-C, -1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MbmSpec {
    Squares(BTreeSet<BigInt>),
    Bound(BigInt),
}

impl MbmSpec {
    pub fn from_squares<I: IntoIterator<Item = BigInt>>(squares: I) -> Result<Self> {
        let set: BTreeSet<BigInt> = squares.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Parse("the set of admissible squares is empty".into()));
        }
        if let Some(bad) = set.iter().find(|s| !s.is_negative()) {
            return Err(Error::Parse(format!(
                "admissible squares must be strictly negative, got {bad}"
            )));
        }
        Ok(MbmSpec::Squares(set))
    }

    pub fn from_bound(c: BigInt) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Parse(format!("the bound must be positive, got {c}")));
        }
        Ok(MbmSpec::Bound(c))
    }

    /// Is this square an admissible candidate square?
    pub fn admits(&self, square: &BigInt) -> bool {
        if !square.is_negative() {
            return false;
        }
        match self {
            MbmSpec::Squares(set) => set.contains(square),
            MbmSpec::Bound(c) => -square <= *c,
        }
    }

    /// max |s| over admissible squares.
    pub fn max_abs(&self) -> BigInt {
        match self {
            MbmSpec::Squares(set) => set
                .iter()
                .map(|s| -s)
                .max()
                .expect("validated non-empty"),
            MbmSpec::Bound(c) => c.clone(),
        }
    }
}

/// A wall: the ray α⊥ ∩ Pos together with its candidate class α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub class: IntVector,
    pub ray: SurdRay,
}

/// Walls and chambers of the positive-cone cross-section.
#[derive(Debug, Clone)]
pub struct ChamberDecomposition {
    /// The two isotropic boundary rays, ordered along the arc.
    pub boundary: (SurdRay, SurdRay),
    /// Walls strictly inside the open arc, sorted along it.
    pub walls: Vec<Wall>,
    /// Open arcs between consecutive walls and boundary rays.
    pub chambers: Vec<(SurdRay, SurdRay)>,
    /// True unless a divisor argument rules out every wall beyond the box.
    pub truncated: bool,
}

/// Verdict of the roundness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Roundness {
    /// value_divisor(P) strictly exceeds every admissible |s|: no
    /// admissible square is representable, a complete proof.
    CertifiedRound(BigInt),
    /// An admissible class was found; its wall cuts the cone.
    WallFound(IntVector),
    /// Box exhausted without a certificate either way.
    Unknown,
}

/// How the positive arc sits relative to the vertical direction.
enum ArcKind {
    /// Finite slope interval (lo, hi); the quadratic opens downward.
    Interval { lo: QuadExt, hi: QuadExt },
    /// Complement arc through infinity: slopes above hi, then the
    /// vertical direction, then slopes below lo.
    WrapsInfinity { hi: QuadExt, lo: QuadExt },
    /// (t0, +infinity): the vertical direction is the far boundary.
    UpToInfinity { t0: QuadExt },
    /// From the vertical direction down to t0: slopes below t0.
    FromInfinity { t0: QuadExt },
}

pub(crate) struct ArcFrame {
    kind: ArcKind,
}

impl ArcFrame {
    fn zone(&self, ray: &SurdRay) -> u8 {
        match (&self.kind, ray) {
            (ArcKind::Interval { .. }, SurdRay::Slope(_)) => 0,
            (ArcKind::Interval { .. }, SurdRay::Infinite) => 2,
            (ArcKind::WrapsInfinity { hi, lo }, SurdRay::Slope(t)) => {
                if t >= hi {
                    0
                } else {
                    debug_assert!(t <= lo, "ray outside the closed arc");
                    2
                }
            }
            (ArcKind::WrapsInfinity { .. }, SurdRay::Infinite) => 1,
            (ArcKind::UpToInfinity { .. }, SurdRay::Slope(_)) => 0,
            (ArcKind::UpToInfinity { .. }, SurdRay::Infinite) => 1,
            (ArcKind::FromInfinity { .. }, SurdRay::Infinite) => 0,
            (ArcKind::FromInfinity { .. }, SurdRay::Slope(_)) => 1,
        }
    }

    /// Order of two rays of the closed arc along the arc orientation.
    pub(crate) fn cmp_along_arc(&self, x: &SurdRay, y: &SurdRay) -> Ordering {
        let (zx, zy) = (self.zone(x), self.zone(y));
        if zx != zy {
            return zx.cmp(&zy);
        }
        match (x, y) {
            (SurdRay::Slope(a), SurdRay::Slope(b)) => a.cmp(b),
            (SurdRay::Infinite, SurdRay::Infinite) => Ordering::Equal,
            _ => unreachable!("same zone mixes finite and infinite rays"),
        }
    }

    fn boundary(&self) -> (SurdRay, SurdRay) {
        match &self.kind {
            ArcKind::Interval { lo, hi } => {
                (SurdRay::Slope(lo.clone()), SurdRay::Slope(hi.clone()))
            }
            ArcKind::WrapsInfinity { hi, lo } => {
                (SurdRay::Slope(hi.clone()), SurdRay::Slope(lo.clone()))
            }
            ArcKind::UpToInfinity { t0 } => (SurdRay::Slope(t0.clone()), SurdRay::Infinite),
            ArcKind::FromInfinity { t0 } => (SurdRay::Infinite, SurdRay::Slope(t0.clone())),
        }
    }
}

fn require_hyperbolic_rank2(op: &'static str, p: &GramLattice) -> Result<()> {
    if p.rank() != 2 {
        return Err(Error::UnsupportedRank {
            op,
            rank: p.rank(),
            required: "exactly rank 2 is supported",
        });
    }
    let sig = p.signature();
    if !(sig.positive == 1 && sig.null == 0 && sig.negative == 1) {
        return Err(Error::WrongSignature {
            op,
            found: sig.to_string(),
            required: "signature (1,0,1) is required",
        });
    }
    Ok(())
}

pub(crate) fn arc_frame(op: &'static str, p: &GramLattice) -> Result<ArcFrame> {
    require_hyperbolic_rank2(op, p)?;
    let g = p.gram();
    let (a, b, c) = (&g[0][0], &g[0][1], &g[1][1]);
    let kind = if !c.is_zero() {
        // q((1,t)) = c·t² + 2b·t + a vanishes at t = (-b ± √Δ)/c
        let delta = b * b - a * c;
        debug_assert!(delta.is_positive(), "signature (1,1) has positive Δ");
        let r1 = QuadExt::new(-b, BigInt::one(), c.clone(), delta.clone());
        let r2 = QuadExt::new(-b, -BigInt::one(), c.clone(), delta);
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        if c.is_negative() {
            ArcKind::Interval { lo, hi }
        } else {
            ArcKind::WrapsInfinity { hi, lo }
        }
    } else {
        // q((1,t)) = 2b·t + a is linear and (0,1) itself is isotropic
        let t0 = QuadExt::from_rational(-a.clone(), b * BigInt::from(2));
        if b.is_positive() {
            ArcKind::UpToInfinity { t0 }
        } else {
            ArcKind::FromInfinity { t0 }
        }
    };
    Ok(ArcFrame { kind })
}

/// The two real isotropic directions bounding the positive cone
/// cross-section, ordered along the arc; rational iff the reduced
/// discriminant is a perfect square.
pub fn positive_cone_boundary(p: &GramLattice) -> Result<(SurdRay, SurdRay)> {
    Ok(arc_frame("positive_cone_boundary", p)?.boundary())
}

/// The ray α⊥ ∩ Pos of a negative class α: in rank 2 a single rational
/// ray strictly inside the cone.
fn wall_ray(p: &GramLattice, class: &IntVector) -> SurdRay {
    let pairing = p.pairing_vector(class);
    let dir = canonical_sign(linalg::primitive_part(&[
        pairing[1].clone(),
        -pairing[0].clone(),
    ]));
    debug_assert!(
        p.eval_square(&dir).unwrap().is_positive(),
        "a negative class pairs to a positive-definite complement"
    );
    SurdRay::from_direction(&dir[0], &dir[1])
}

/// All primitive classes α with coordinates in [-bound, bound], canonical
/// sign, and q(α, α) admissible, each with its wall ray; sorted along the
/// arc.
pub fn candidate_walls(p: &GramLattice, spec: &MbmSpec, bound: u32) -> Result<Vec<Wall>> {
    let frame = arc_frame("candidate_walls", p)?;
    let mut walls: Vec<Wall> = Vec::new();
    for v in graded_box(2, bound) {
        match v.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => {}
            _ => continue,
        }
        if num_integer::gcd(v[0], v[1]) != 1 {
            continue;
        }
        let class: IntVector = vec![BigInt::from(v[0]), BigInt::from(v[1])];
        let square = p.eval_square(&class)?;
        if !spec.admits(&square) {
            continue;
        }
        walls.push(Wall {
            ray: wall_ray(p, &class),
            class,
        });
    }
    walls.sort_by(|x, y| frame.cmp_along_arc(&x.ray, &y.ray));
    walls.dedup_by(|a, b| a.ray == b.ray);
    Ok(walls)
}

/// True when the divisor argument rules out every admissible square:
/// d strictly exceeds each |s|, so no q(x,x) can land in the spec.
fn divisor_excludes_all(value_divisor: &BigInt, spec: &MbmSpec) -> bool {
    value_divisor > &spec.max_abs()
}

/// Assembles boundary, walls and chambers. `truncated` stays true unless
/// the value-divisor certificate proves no admissible square is
/// representable at all; the artifact never silently claims completeness
/// of a box enumeration.
pub fn chambers_rank2(
    p: &GramLattice,
    spec: &MbmSpec,
    bound: u32,
) -> Result<ChamberDecomposition> {
    let frame = arc_frame("chambers_rank2", p)?;
    let boundary = frame.boundary();
    let certified_complete = divisor_excludes_all(&p.value_divisor(), spec);
    let walls = if certified_complete {
        Vec::new()
    } else {
        candidate_walls(p, spec, bound)?
    };
    let mut cuts: Vec<SurdRay> = Vec::with_capacity(walls.len() + 2);
    cuts.push(boundary.0.clone());
    cuts.extend(walls.iter().map(|w| w.ray.clone()));
    cuts.push(boundary.1.clone());
    let chambers = cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Ok(ChamberDecomposition {
        boundary,
        walls,
        chambers,
        truncated: !certified_complete,
    })
}

/// Decides roundness: the divisor certificate first (a complete proof),
/// then box enumeration for a concrete wall, then Unknown.
pub fn is_round(p: &GramLattice, spec: &MbmSpec, bound: u32) -> Result<Roundness> {
    require_hyperbolic_rank2("is_round", p)?;
    let divisor = p.value_divisor();
    if divisor_excludes_all(&divisor, spec) {
        return Ok(Roundness::CertifiedRound(divisor));
    }
    for v in graded_box(2, bound) {
        match v.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => {}
            _ => continue,
        }
        if num_integer::gcd(v[0], v[1]) != 1 {
            continue;
        }
        let class: IntVector = vec![BigInt::from(v[0]), BigInt::from(v[1])];
        if spec.admits(&p.eval_square(&class)?) {
            return Ok(Roundness::WallFound(class));
        }
    }
    Ok(Roundness::Unknown)
}

/// The two primitive isotropic generators when P is some U(N); none
/// otherwise. Under roundness these are the nef boundary classes.
pub fn nef_isotropic_generators(p: &GramLattice) -> Result<Option<(IntVector, IntVector)>> {
    require_hyperbolic_rank2("nef_isotropic_generators", p)?;
    match p.un_hyperbolic_basis()? {
        Some((_, [x, z])) => {
            let mut gens = [canonical_sign(x), canonical_sign(z)];
            gens.sort();
            let [g1, g2] = gens;
            Ok(Some((g1, g2)))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn diag(a: i64, b: i64) -> GramLattice {
        GramLattice::from_i64(None, &[&[a, 0], &[0, b]]).unwrap()
    }

    fn slope_i64(n: i64) -> SurdRay {
        SurdRay::Slope(QuadExt::from_integer(n.into()))
    }

    #[test]
    fn boundary_of_hyperbolic_plane() {
        // U(N): rays along (1,0) and (0,1), i.e. slope 0 and infinity
        let (start, end) = positive_cone_boundary(&GramLattice::hyperbolic_plane(3)).unwrap();
        assert_eq!(start, slope_i64(0));
        assert_eq!(end, SurdRay::Infinite);
        assert!(start.is_rational() && end.is_rational());
    }

    #[test]
    fn boundary_of_split_diagonal() {
        let (start, end) = positive_cone_boundary(&diag(2, -2)).unwrap();
        assert_eq!(start, slope_i64(-1));
        assert_eq!(end, slope_i64(1));
    }

    #[test]
    fn boundary_irrational_surds() {
        // 2a² - 6b² = 0 has the real solutions t = ±1/√3 = ±√3/3
        let (start, end) = positive_cone_boundary(&diag(2, -6)).unwrap();
        let expect_pos = QuadExt::new(0.into(), 1.into(), 3.into(), 3.into());
        let expect_neg = QuadExt::new(0.into(), (-1).into(), 3.into(), 3.into());
        assert_eq!(start, SurdRay::Slope(expect_neg));
        assert_eq!(end, SurdRay::Slope(expect_pos.clone()));
        assert_eq!(expect_pos.radicand(), &BigInt::from(3));
        assert!(!start.is_rational());
    }

    #[test]
    fn boundary_rejects_wrong_signature() {
        assert!(matches!(
            positive_cone_boundary(&diag(2, 2)),
            Err(Error::WrongSignature { .. })
        ));
        assert!(matches!(
            positive_cone_boundary(&GramLattice::rank1(2)),
            Err(Error::UnsupportedRank { .. })
        ));
    }

    #[test]
    fn walls_split_diagonal_single_class() {
        // 2a² - 2b² = -2 ⇔ b² - a² = 1 has only (0, ±1)
        let spec = MbmSpec::from_squares([BigInt::from(-2)]).unwrap();
        let walls = candidate_walls(&diag(2, -2), &spec, 10).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].class, int_vec(&[0, 1]));
        assert_eq!(walls[0].ray, slope_i64(0));
    }

    #[test]
    fn walls_plain_hyperbolic_plane() {
        let spec = MbmSpec::from_squares([BigInt::from(-2)]).unwrap();
        let walls = candidate_walls(&GramLattice::hyperbolic_plane(1), &spec, 5).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].class, int_vec(&[1, -1]));
        assert_eq!(walls[0].ray, slope_i64(1));
    }

    #[test]
    fn walls_excluded_by_divisor() {
        // all squares of U(3) are multiples of 6, never -2
        let spec = MbmSpec::from_squares([BigInt::from(-2)]).unwrap();
        let walls = candidate_walls(&GramLattice::hyperbolic_plane(3), &spec, 100).unwrap();
        assert!(walls.is_empty());
    }

    #[test]
    fn chambers_with_and_without_certificate() {
        let spec = MbmSpec::from_squares([BigInt::from(-2)]).unwrap();
        let d = chambers_rank2(&GramLattice::hyperbolic_plane(3), &spec, 10).unwrap();
        assert_eq!(d.walls.len(), 0);
        assert_eq!(d.chambers.len(), 1);
        assert!(!d.truncated);

        let d = chambers_rank2(&diag(2, -2), &spec, 10).unwrap();
        assert_eq!(d.walls.len(), 1);
        assert_eq!(d.chambers.len(), 2);
        assert!(d.truncated);
        assert_eq!(d.chambers[0].1, d.walls[0].ray);
        assert_eq!(d.chambers[1].0, d.walls[0].ray);

        let d = chambers_rank2(&GramLattice::hyperbolic_plane(1), &spec, 10).unwrap();
        assert_eq!((d.walls.len(), d.chambers.len()), (1, 2));
    }

    #[test]
    fn chamber_count_is_walls_plus_one() {
        let spec = MbmSpec::from_bound(BigInt::from(4)).unwrap();
        for l in [diag(2, -2), diag(4, -2), GramLattice::hyperbolic_plane(1)] {
            let d = chambers_rank2(&l, &spec, 8).unwrap();
            assert_eq!(d.chambers.len(), d.walls.len() + 1);
        }
    }

    #[test]
    fn walls_sit_strictly_inside_the_arc() {
        let spec = MbmSpec::from_bound(BigInt::from(6)).unwrap();
        for l in [
            diag(2, -2),
            diag(4, -6),
            diag(6, -2),
            GramLattice::hyperbolic_plane(1),
            GramLattice::from_i64(None, &[&[2, 1], &[1, -2]]).unwrap(),
        ] {
            let frame = arc_frame("test", &l).unwrap();
            let (start, end) = frame.boundary();
            for w in candidate_walls(&l, &spec, 10).unwrap() {
                // orthogonality is exact
                let dir = match &w.ray {
                    SurdRay::Infinite => int_vec(&[0, 1]),
                    SurdRay::Slope(q) => {
                        let r = q.rational_part();
                        linalg::primitive_part(&[r.denom().clone(), r.numer().clone()])
                    }
                };
                assert!(l.eval_form(&w.class, &dir).unwrap().is_zero());
                assert_eq!(frame.cmp_along_arc(&start, &w.ray), Ordering::Less);
                assert_eq!(frame.cmp_along_arc(&w.ray, &end), Ordering::Less);
            }
        }
    }

    #[test]
    fn roundness_divisor_certificate() {
        let spec = MbmSpec::from_bound(BigInt::from(2)).unwrap();
        assert_eq!(
            is_round(&GramLattice::hyperbolic_plane(5), &spec, 10).unwrap(),
            Roundness::CertifiedRound(BigInt::from(10))
        );
    }

    #[test]
    fn roundness_wall_found() {
        let spec = MbmSpec::from_squares([BigInt::from(-2)]).unwrap();
        match is_round(&GramLattice::hyperbolic_plane(1), &spec, 10).unwrap() {
            Roundness::WallFound(class) => assert_eq!(class, int_vec(&[1, -1])),
            other => panic!("expected WallFound, got {other:?}"),
        }
        // enumeration must run before any Unknown verdict: 4a² - 6b² = -2
        // is solvable and the divisor (2) does not certify
        match is_round(&diag(4, -6), &spec, 20).unwrap() {
            Roundness::WallFound(class) => {
                assert_eq!(diag(4, -6).eval_square(&class).unwrap(), BigInt::from(-2));
            }
            other => panic!("expected WallFound, got {other:?}"),
        }
    }

    #[test]
    fn roundness_unknown_when_nothing_certifies() {
        // 2a² - 14b² = -4 ⇔ a² - 7b² = -2 is insoluble mod 7, but the
        // artifact can neither certify nor find a wall
        let spec = MbmSpec::from_squares([BigInt::from(-4)]).unwrap();
        assert_eq!(
            is_round(&diag(2, -14), &spec, 20).unwrap(),
            Roundness::Unknown
        );
    }

    #[test]
    fn roundness_consistency_with_walls() {
        let spec = MbmSpec::from_bound(BigInt::from(2)).unwrap();
        let p = GramLattice::hyperbolic_plane(5);
        if let Roundness::CertifiedRound(_) = is_round(&p, &spec, 10).unwrap() {
            for bound in [10, 50, 100] {
                assert!(candidate_walls(&p, &spec, bound).unwrap().is_empty());
            }
        } else {
            panic!("U(5) with bound 2 must certify");
        }
    }

    #[test]
    fn decomposition_invariant_under_signed_permutation() {
        let spec = MbmSpec::from_squares([BigInt::from(-2)]).unwrap();
        let p = diag(2, -2);
        // swap-and-negate basis change: gram stays diagonal (−2, 2) ↦ ...
        let q = GramLattice::from_i64(None, &[&[-2, 0], &[0, 2]]).unwrap();
        let dp = chambers_rank2(&p, &spec, 10).unwrap();
        let dq = chambers_rank2(&q, &spec, 10).unwrap();
        assert_eq!(dp.walls.len(), dq.walls.len());
        assert_eq!(dp.chambers.len(), dq.chambers.len());
        assert_eq!(dp.truncated, dq.truncated);
    }

    #[test]
    fn nef_generators_of_un() {
        let (g1, g2) = nef_isotropic_generators(&GramLattice::hyperbolic_plane(3))
            .unwrap()
            .expect("U(3) is hyperbolic");
        assert_eq!((g1.clone(), g2.clone()), (int_vec(&[0, 1]), int_vec(&[1, 0])));
        // boundary rays coincide with the generator directions
        let (start, end) = positive_cone_boundary(&GramLattice::hyperbolic_plane(3)).unwrap();
        let dirs = [
            SurdRay::from_direction(&g1[0], &g1[1]),
            SurdRay::from_direction(&g2[0], &g2[1]),
        ];
        assert!(dirs.contains(&start) && dirs.contains(&end));
    }

    #[test]
    fn nef_generators_absent_for_non_hyperbolic_planes() {
        assert_eq!(nef_isotropic_generators(&diag(2, -2)).unwrap(), None);
        let odd = GramLattice::from_i64(None, &[&[0, 3], &[3, 2]]).unwrap();
        assert_eq!(nef_isotropic_generators(&odd).unwrap(), None);
    }

    #[test]
    fn mbm_spec_validation() {
        assert!(MbmSpec::from_squares([BigInt::from(2)]).is_err());
        assert!(MbmSpec::from_squares(Vec::<BigInt>::new()).is_err());
        assert!(MbmSpec::from_bound(BigInt::zero()).is_err());
        let spec = MbmSpec::from_bound(BigInt::from(3)).unwrap();
        assert!(spec.admits(&BigInt::from(-2)));
        assert!(spec.admits(&BigInt::from(-3)));
        assert!(!spec.admits(&BigInt::from(-4)));
        assert!(!spec.admits(&BigInt::from(2)));
        assert_eq!(spec.max_abs(), BigInt::from(3));
    }
}
