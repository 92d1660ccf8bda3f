use super::group::{FgAbGroup, GroupElement};
use super::matrix::IntMatrix;
use super::snf::{integer_kernel, lattice_basis, smith, solve_integer, SnfTrack};
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// Homomorphism of presented groups, given by an integer matrix on ambient coordinates.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub src: FgAbGroup,
    pub dst: FgAbGroup,
    /// `dst.ambient_rank x src.ambient_rank`.
    pub matrix: IntMatrix,
}

impl AbHom {
    /// Checks that every source relation maps into the target relation lattice.
    pub fn new(src: FgAbGroup, dst: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != dst.ambient_rank() || matrix.cols() != src.ambient_rank() {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.ambient_rank(),
                src.ambient_rank()
            )));
        }
        let images = matrix.mul(src.relations());
        for (j, col) in images.columns().iter().enumerate() {
            if !dst.is_zero_ambient(col) {
                return Err(Error::NotHomomorphism(format!(
                    "relation column {j} has nonzero image"
                )));
            }
        }
        Ok(AbHom { src, dst, matrix })
    }

    /// Homomorphism from canonical-coordinate images of the source's canonical generators.
    pub fn from_generator_images(
        src: FgAbGroup,
        dst: FgAbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != src.ngens() {
            return Err(Error::Dimension(format!(
                "{} generator images for {} generators",
                images.len(),
                src.ngens()
            )));
        }
        let lifted: Vec<Vec<BigInt>> = images.iter().map(|y| dst.lift(y)).collect();
        let on_canonical = IntMatrix::from_columns(dst.ambient_rank(), &lifted);
        let matrix = on_canonical.mul(src.coord_matrix());
        Self::new(src, dst, matrix)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbHom {
            src: g.clone(),
            dst: g.clone(),
            matrix: IntMatrix::identity(g.ambient_rank()),
        }
    }

    pub fn zero(src: &FgAbGroup, dst: &FgAbGroup) -> Self {
        AbHom {
            src: src.clone(),
            dst: dst.clone(),
            matrix: IntMatrix::zeros(dst.ambient_rank(), src.ambient_rank()),
        }
    }

    pub fn apply(&self, x: &[BigInt]) -> GroupElement {
        let amb = self.src.lift(x);
        self.dst.from_ambient(&self.matrix.mul_vec(&amb))
    }

    pub fn apply_ambient(&self, v: &[BigInt]) -> GroupElement {
        self.dst.from_ambient(&self.matrix.mul_vec(v))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> AbHom {
        assert_eq!(self.dst.ambient_rank(), other.src.ambient_rank());
        AbHom {
            src: self.src.clone(),
            dst: other.dst.clone(),
            matrix: other.matrix.mul(&self.matrix),
        }
    }

    /// Whether the map is zero on every canonical generator.
    pub fn is_zero(&self) -> bool {
        (0..self.src.ngens()).all(|i| self.dst.is_zero(&self.apply(&self.src.generator(i))))
    }

    /// Matrix on canonical coordinates (rows: target coordinates, unreduced).
    pub fn canonical_matrix(&self) -> IntMatrix {
        self.dst
            .coord_matrix()
            .mul(&self.matrix)
            .mul(self.src.lift_matrix())
    }

    /// Some `x` with `f(x) = y`, if `y` is in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<GroupElement> {
        let big = self.matrix.hcat(self.dst.relations());
        let target = self.dst.lift(y);
        let sol = solve_integer(&big, &target)?;
        let x = &sol[..self.src.ambient_rank()];
        Some(self.src.from_ambient(x))
    }

    pub fn parts(&self) -> HomParts {
        hom_parts(self)
    }
}

/// Kernel, image and cokernel of a homomorphism.
#[derive(Clone, Debug)]
pub struct HomParts {
    pub kernel: FgAbGroup,
    /// Kernel inclusion into the source.
    pub kernel_map: AbHom,
    pub image: FgAbGroup,
    /// Source onto the image.
    pub image_proj: AbHom,
    /// Image into the target.
    pub image_map: AbHom,
    pub cokernel: FgAbGroup,
    /// Target onto the cokernel.
    pub cokernel_proj: AbHom,
}

/// Ambient lattice `{x : f(x) ∈ relations(dst)}` as a basis of columns.
fn preimage_lattice(f: &AbHom) -> IntMatrix {
    let n = f.src.ambient_rank();
    let big = f.matrix.hcat(f.dst.relations());
    let k = integer_kernel(&big);
    let idx: Vec<usize> = (0..n).collect();
    let xs = k.select_rows(&idx);
    lattice_basis(&xs)
}

pub fn hom_parts(f: &AbHom) -> HomParts {
    let n = f.src.ambient_rank();
    let basis = preimage_lattice(f);
    let r = basis.cols();

    // coordinates of source relations in the kernel basis
    let kernel_rel = if r == 0 {
        IntMatrix::zeros(0, f.src.relations().cols())
    } else {
        let s = smith(
            &basis,
            SnfTrack {
                u: true,
                v: true,
                ..SnfTrack::default()
            },
        );
        let u = s.u.as_ref().unwrap();
        let v = s.v.as_ref().unwrap();
        let ur = u.mul(f.src.relations());
        let mut y = IntMatrix::zeros(r, ur.cols());
        for j in 0..ur.cols() {
            for i in 0..r {
                y[(i, j)] = &ur[(i, j)] / &s.diag[i];
            }
        }
        v.mul(&y)
    };
    let kernel = FgAbGroup::from_presentation(r, kernel_rel);
    let kernel_map = AbHom {
        src: kernel.clone(),
        dst: f.src.clone(),
        matrix: basis.clone(),
    };

    let image = FgAbGroup::from_presentation(n, basis);
    let image_proj = AbHom {
        src: f.src.clone(),
        dst: image.clone(),
        matrix: IntMatrix::identity(n),
    };
    let image_map = AbHom {
        src: image.clone(),
        dst: f.dst.clone(),
        matrix: f.matrix.clone(),
    };

    let m = f.dst.ambient_rank();
    let cokernel = FgAbGroup::from_presentation(m, f.dst.relations().hcat(&f.matrix));
    let cokernel_proj = AbHom {
        src: f.dst.clone(),
        dst: cokernel.clone(),
        matrix: IntMatrix::identity(m),
    };
    HomParts {
        kernel,
        kernel_map,
        image,
        image_proj,
        image_map,
        cokernel,
        cokernel_proj,
    }
}

/// Whether `f` is injective.
pub fn is_injective(f: &AbHom) -> bool {
    hom_parts(f).kernel.is_trivial()
}

/// Whether `f` is surjective.
pub fn is_surjective(f: &AbHom) -> bool {
    let coker =
        FgAbGroup::from_presentation(f.dst.ambient_rank(), f.dst.relations().hcat(&f.matrix));
    coker.is_trivial()
}

/// Whether `image(f) = kernel(g)` for composable `f`, `g`.
pub fn is_exact_at(f: &AbHom, g: &AbHom) -> bool {
    if !f.then(g).is_zero() {
        return false;
    }
    let k = hom_parts(g);
    // every kernel generator of g must lie in the image of f
    (0..k.kernel.ngens()).all(|i| {
        let x = k.kernel_map.apply(&k.kernel.generator(i));
        f.preimage(&x).is_some()
    })
}
