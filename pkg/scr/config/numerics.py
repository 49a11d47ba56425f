import numpy as np

WP = np.float64
RND_SEED = 42

# images are handled on the [0, 255] scale throughout
PIXEL_MAX = 255.

# floor of every sigma estimate; keeps the weights finite
SIGMA_FLOOR = 1e-4

# the small value of the relative-weight formula
EPS_P = 1e-8

# default ADMM tolerance: eps = EPS_SCALE * sqrt(3 d^2 N)
EPS_SCALE = 1e-4

# number of key-patch chunks per outer iteration, each with its own accumulation buffers
AGGREGATION_CHUNKS = 16

# random-number generator recorded in manifests
RNG_NAME = "PCG64"
