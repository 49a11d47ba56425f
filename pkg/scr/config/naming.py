SEP_OUT = "_"

FLOAT_SUFFIX = ".f32img"
PNG_SUFFIX = ".png"
MANIFEST_SUFFIX = ".manifest.yaml"

# readable inputs; 8-bit or 16-bit raster formats and the float container
IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", FLOAT_SUFFIX)

# float container: magic, uint32 H, W, C (little-endian), then row-major little-endian float32 pixels
FLOAT_MAGIC = b"DTNFMF32"

MANIFEST_SCHEMA = "dtnfm-manifest/1"
REPORT_SCHEMA = "dtnfm-bench/1"

THREADS_ENV_VAR = "DTNFM_THREADS"
