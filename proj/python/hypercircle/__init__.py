from ._hypercircle import (
    CertificateError,
    ConfigError,
    RunConfig,
    load_config,
    mesh_stats,
    parse_config,
    run_case,
    sweep_bandwidth,
    sweep_mesh,
)

__all__ = [
    "CertificateError",
    "ConfigError",
    "RunConfig",
    "load_config",
    "mesh_stats",
    "parse_config",
    "run_case",
    "sweep_bandwidth",
    "sweep_mesh",
]
