from pathlib import Path

from scr.config.naming import IMAGE_SUFFIXES


def check_dir(
        dir_or_file_path: str | Path,
        is_file: bool = False
) -> None:
    """
    Create the directory (or the parent directory of a file path) when it does not exist.
    """
    dir_or_file_path = Path(dir_or_file_path)
    directory = dir_or_file_path.parent if is_file else dir_or_file_path

    if not directory.is_dir():
        print(f'Directory "{directory.as_posix()}" does not exist, creating it now.')
        directory.mkdir(parents=True, exist_ok=True)


def list_images(
        directory: str | Path
) -> list[Path]:
    """Readable images directly inside the directory, sorted by name."""
    directory = Path(directory)

    if not directory.is_dir():
        return []

    return sorted(p for p in directory.iterdir()
                  if p.is_file() and any(p.name.lower().endswith(suffix) for suffix in IMAGE_SUFFIXES))


def stem_of(
        path: str | Path
) -> str:
    """File name without any of the known image suffixes."""
    name = Path(path).name
    for suffix in IMAGE_SUFFIXES:
        if name.lower().endswith(suffix):
            return name[:-len(suffix)]
    return Path(path).stem
