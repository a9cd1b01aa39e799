use super::band::BandMatrix;
use crate::error::Result;
use crate::field::Field;
use crate::wilson::coeffs::Coeffs;
use crate::wilson::{lambda, CoeffDir, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    X,
    Z,
    V,
    Xbar,
    Zbar,
}

/// Recurrence side: indexed by `n` at the given parameters. Difference
/// side: indexed by `x`, with `b` and `c` exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Recurrence,
    Difference,
}

/// How a coefficient `M_{m,n}` is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Entry `(m, n)` is `M_{m,n}`.
    Coefficient,
    /// Row `n` holds the coefficients of equation `n`: entry `(n, m)` is
    /// `M_{m,n}`, so the eigenvalue problem reads `(X - λ Z) w = 0`.
    EquationRow,
}

/// Diagonal of V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VVariant {
    /// `λ(q^n; b)`.
    Plain,
    /// `λ(q^n; b) - (1 + b q) = -(q^{-n} + b q^{n+1})`.
    Shifted,
}

#[derive(Debug, Clone)]
pub struct BuildOptions<F: Field> {
    pub side: Side,
    pub orientation: Orientation,
    /// Shift applied to X and X̄: the built matrix is `X + rho Z`.
    pub rho: F,
    pub v_variant: VVariant,
    /// Perturb `Z_{n+1,n}` by one (fault injection).
    pub fault: bool,
}

impl<F: Field> BuildOptions<F> {
    pub fn new(orientation: Orientation, rho: F, v_variant: VVariant) -> Self {
        BuildOptions {
            side: Side::Recurrence,
            orientation,
            rho,
            v_variant,
            fault: false,
        }
    }
}

/// Truncation of one operator to `size × size`.
pub fn build<F: Field>(
    kind: MatrixKind,
    size: usize,
    params: &Params<F>,
    opts: &BuildOptions<F>,
) -> Result<BandMatrix<F>> {
    let swapped;
    let p = match opts.side {
        Side::Recurrence => params,
        Side::Difference => {
            swapped = params.swap_bc();
            &swapped
        }
    };
    if kind == MatrixKind::V {
        let shift = match opts.v_variant {
            VVariant::Plain => F::zero(),
            VVariant::Shifted => F::one() + p.b.clone() * p.q.clone(),
        };
        let diag = (0..size)
            .map(|n| Ok(lambda(&p.qp(n as i64), &p.b, &p.q)? - shift.clone()))
            .collect::<Result<Vec<F>>>()?;
        return Ok(BandMatrix::diagonal(diag));
    }
    let k = Coeffs::new(p, opts.fault);
    let barred = matches!(kind, MatrixKind::Xbar | MatrixKind::Zbar);
    let is_x = matches!(kind, MatrixKind::X | MatrixKind::Xbar);
    let mut m = BandMatrix::zeros(size, 1, 1);
    for n in 0..size {
        for dir in CoeffDir::ALL {
            let row = n as i64 + dir.offset();
            if row < 0 || row >= size as i64 {
                continue;
            }
            let v = if is_x {
                k.x_shifted(barred, dir, n, &opts.rho)?
            } else {
                k.z(barred, dir, n)?
            };
            let (i, j) = match opts.orientation {
                Orientation::Coefficient => (row as usize, n),
                Orientation::EquationRow => (n, row as usize),
            };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Which ρ to apply to X (or X̄).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoVariant {
    Zero,
    /// `ρ = -(1 + q c)`.
    Shift,
}

impl RhoVariant {
    pub fn value<F: Field>(self, p: &Params<F>) -> F {
        match self {
            RhoVariant::Zero => F::zero(),
            RhoVariant::Shift => -(F::one() + p.q.clone() * p.c.clone()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RhoVariant::Zero => "0",
            RhoVariant::Shift => "shift",
        }
    }
}

/// Conventions for one generator triplet `(X, Z, V)` or `(X̄, Z̄, V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripletSpec {
    pub barred: bool,
    pub orientation: Orientation,
    pub rho: RhoVariant,
    pub v_variant: VVariant,
}

impl TripletSpec {
    /// The conventions under which the five Wilson relations hold:
    /// equation rows for `(X̃, Z, V)`, coefficient storage for `(X̄, Z̄, V)`,
    /// `ρ = -(1 + q c)` and the shifted V in both cases.
    pub fn standard(barred: bool) -> Self {
        TripletSpec {
            barred,
            orientation: if barred {
                Orientation::Coefficient
            } else {
                Orientation::EquationRow
            },
            rho: RhoVariant::Shift,
            v_variant: VVariant::Shifted,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Triplet<F: Field> {
    pub x: BandMatrix<F>,
    pub z: BandMatrix<F>,
    pub v: BandMatrix<F>,
}

pub fn build_triplet<F: Field>(size: usize, params: &Params<F>, spec: &TripletSpec, fault: bool) -> Result<Triplet<F>> {
    let mut opts = BuildOptions::new(spec.orientation, spec.rho.value(params), spec.v_variant);
    opts.fault = fault;
    let (xk, zk) = if spec.barred {
        (MatrixKind::Xbar, MatrixKind::Zbar)
    } else {
        (MatrixKind::X, MatrixKind::Z)
    };
    Ok(Triplet {
        x: build(xk, size, params, &opts)?,
        z: build(zk, size, params, &opts)?,
        v: build(MatrixKind::V, size, params, &opts)?,
    })
}
