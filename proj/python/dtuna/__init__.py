"""Dichotomy-function low-light enhancement with genetic-algorithm parameter tuning."""

from ._core import (  # noqa: F401
    EvolveResult,
    GAConfig,
    InvalidArgument,
    IoError,
    OptimizeResult,
    TunaParams,
    apply_method,
    denormalize,
    dichotomy,
    dichotomy_enhance,
    dichotomy_filter_enhance,
    evolve,
    fitness,
    gamma_correct,
    gaussian_blur,
    guided_filter,
    hsv_to_rgb,
    loe,
    minmax_normalize,
    normalize_u8,
    optimize_image,
    poly_mutation,
    psnr,
    read_png,
    rgb_to_hsv,
    run_benchmark,
    sbx_crossover,
    ssim,
    synth_darken,
    synthetic_scene,
    tuna_enhance,
    write_png,
)

__all__ = [name for name in dir() if not name.startswith("_")]
