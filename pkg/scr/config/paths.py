from os import path

PROJECT_DIR = path.dirname(path.dirname(path.dirname(path.abspath(__file__))))

# base folder for all generated outputs
PATH_OUTPUT = path.join(PROJECT_DIR, "output")

# subfolders for different products
PATH_DENOISED = path.join(PATH_OUTPUT, "denoised")
PATH_NOISY = path.join(PATH_OUTPUT, "noisy")
PATH_REPORTS = path.join(PATH_OUTPUT, "reports")
