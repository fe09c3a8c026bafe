//! Named figure datasets. Each preset is an ordinary argument list; the
//! parameters the figures leave unstated are listed in `assumed`.

pub struct Preset {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub description: &'static str,
    pub assumed: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1a",
        args: &["dispersion", "--xi", "0", "--kmin", "0.05", "--kmax", "3", "--points", "600"],
        description: "unscreened plasmon dispersion",
        assumed: "k in [0.05, 3]",
    },
    Preset {
        name: "fig1b",
        args: &["dispersion", "--xi", "0,0.25,0.5,0.75,1,1.25", "--kmin", "0.05", "--kmax", "3", "--points", "600"],
        description: "screened plasmon dispersion family",
        assumed: "xi in {0, 0.25, 0.5, 0.75, 1, 1.25}; k in [0.05, 3]",
    },
    Preset {
        name: "fig2a",
        args: &["sweep", "--var", "gamma", "--lo", "0.01", "--hi", "3", "--points", "600", "--mu", "0", "--xi", "0"],
        description: "branch wavenumbers against beam speed, classical unscreened beam",
        assumed: "gamma in [0.01, 3]",
    },
    Preset {
        name: "fig2b",
        args: &["sweep", "--var", "gamma", "--lo", "0.01", "--hi", "3", "--points", "600", "--mu", "0", "--xi", "0.5"],
        description: "branch wavenumbers against beam speed, screened classical beam",
        assumed: "gamma in [0.01, 3]; xi = 0.5",
    },
    Preset {
        name: "fig2c",
        args: &["sweep", "--var", "gamma", "--lo", "0.01", "--hi", "3", "--points", "600", "--material", "Al", "--theta", "0.1"],
        description: "branch wavenumbers against beam speed in aluminium",
        assumed: "gamma in [0.01, 3]; theta = 0.1",
    },
    Preset {
        name: "fig2d",
        args: &["sweep", "--var", "xi", "--lo", "0", "--hi", "0.99", "--points", "500", "--gamma", "2", "--mu", "0"],
        description: "branch wavenumbers against screening at fixed speed",
        assumed: "gamma = 2; mu = 0; xi in [0, 0.99]",
    },
    Preset {
        name: "fig3a-al",
        args: &["solve", "--material", "Al", "--theta", "0.1", "--gamma", "1.5", "--u0", "0.1", "--xmin", "0", "--xmax", "20", "--points", "2001"],
        description: "driven field in aluminium",
        assumed: "U0 = 0.1; x in [0, 20]; gamma = 1.5; rest initial state",
    },
    Preset {
        name: "fig3b-ag",
        args: &["solve", "--material", "Ag", "--theta", "0.1", "--gamma", "1.5", "--u0", "0.1", "--xmin", "0", "--xmax", "20", "--points", "2001"],
        description: "driven field in silver",
        assumed: "U0 = 0.1; x in [0, 20]; gamma = 1.5; rest initial state",
    },
    Preset {
        name: "fig3c-al",
        args: &["sweep", "--var", "gamma", "--lo", "0.05", "--hi", "3", "--points", "600", "--target", "steady", "--material", "Al", "--theta", "0.1", "--u0", "0.1"],
        description: "steady amplitude against beam speed in aluminium",
        assumed: "U0 = 0.1; gamma in [0.05, 3]",
    },
    Preset {
        name: "fig3d-ag",
        args: &["sweep", "--var", "gamma", "--lo", "0.05", "--hi", "3", "--points", "600", "--target", "steady", "--material", "Ag", "--theta", "0.1", "--u0", "0.1"],
        description: "steady amplitude against beam speed in silver",
        assumed: "U0 = 0.1; gamma in [0.05, 3]",
    },
    Preset {
        name: "fig4a",
        args: &["sweep", "--var", "G", "--lo", "0.1", "--hi", "10", "--points", "500", "--target", "bragg", "--nmax", "3", "--mu", "0", "--xi", "0"],
        description: "resonant speeds against lattice wavenumber, unscreened",
        assumed: "G in [0.1, 10]; n <= 3",
    },
    Preset {
        name: "fig4b",
        args: &["sweep", "--var", "G", "--lo", "0.1", "--hi", "10", "--points", "500", "--target", "bragg", "--nmax", "3", "--material", "Al", "--theta", "0.1"],
        description: "resonant speeds against lattice wavenumber in aluminium",
        assumed: "G in [0.1, 10]; n <= 3; theta = 0.1",
    },
    Preset {
        name: "fig4c",
        args: &["lattice", "--gamma", "2", "--mu", "0", "--u0", "0.1", "--G", "3", "--ug", "0.1", "--n", "1", "--xmax", "20", "--points", "2001"],
        description: "Bloch response of an unscreened beam",
        assumed: "U0 = Ug = 0.1; x in [0, 20]; gamma = 2; G = 3",
    },
    Preset {
        name: "fig4d",
        args: &["lattice", "--gamma", "2", "--mu", "0", "--u0", "0.1", "--G", "1", "--ug", "0.1", "--bvp", "--xmax", "20", "--points", "2001"],
        description: "periodic lattice solution of an unscreened beam",
        assumed: "U0 = Ug = 0.1; x in [0, 20]; gamma = 2; G = 1",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

pub fn names() -> String {
    PRESETS.iter().map(|p| p.name).collect::<Vec<_>>().join(", ")
}
