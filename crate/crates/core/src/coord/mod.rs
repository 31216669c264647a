//! Chart-level Riemannian geometry: metrics given by evaluators, their
//! Christoffel symbols and curvature, geodesics, level-set hypersurfaces,
//! warped and twisted products, and numeric Frenet data of sampled curves.

mod export;
mod frenet;
mod geodesic;
mod hypersurface;
mod metric;
mod products;

pub use export::write_residual_grid_csv;
pub use frenet::{frenet_numeric, frenet_numeric_with, SampledCurve};
pub use geodesic::{geodesic_integrate, geodesic_integrate_with, GeodesicTrajectory};
pub use hypersurface::{
    second_fundamental_form, second_fundamental_form_with, LevelSetHypersurface,
    SecondFundamentalForm,
};
pub use metric::{
    Christoffel, CoordinateMetric, MatrixFn, PartialsFn, ScalarField, ScalarFn, VectorFn,
};
pub use products::{
    build_twisted_product, build_warped_product, eikonal_residuals, product_grid, spiral_points,
    twisting_ode_residual, twisting_ode_residual_with, EikonalResiduals, TwistJet,
    TwistedProductSpec,
};
