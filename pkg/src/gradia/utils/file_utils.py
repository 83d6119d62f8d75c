"""File utility functions for gradia."""

import os
from typing import Any, Dict

import aiofiles

SOURCE_EXTENSIONS = [".sdc", ".seal", ".ddc", ".lat", ".pts", ".txt"]


async def read_file(file_path: str) -> Dict[str, Any]:
    """Read a source file and return it with metadata.

    Args:
        file_path: Path to a term, lattice or signature file

    Returns:
        Dict containing:
        - content: The file content as string
        - metadata: File metadata (source, extension)
        - error: Error message if any
    """
    try:
        if not os.path.exists(file_path):
            return {
                "error": f"File not found: {file_path}",
                "content": "",
                "metadata": {},
            }

        file_extension = os.path.splitext(file_path)[1].lower()
        if file_extension not in SOURCE_EXTENSIONS:
            return {
                "error": f"Unsupported file type: {file_extension}",
                "content": "",
                "metadata": {"source": file_path, "extension": file_extension},
            }

        async with aiofiles.open(file_path, "r", encoding="utf-8") as f:
            content = await f.read()

        return {
            "content": content,
            "metadata": {
                "source": file_path,
                "extension": file_extension,
            },
        }

    except Exception as e:
        return {
            "error": f"Error reading file {file_path}: {str(e)}",
            "content": "",
            "metadata": {},
        }


async def write_file(file_path: str, content: str) -> None:
    """Write ``content`` to ``file_path``, creating parent directories."""
    os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
    async with aiofiles.open(file_path, "w", encoding="utf-8") as f:
        await f.write(content)
