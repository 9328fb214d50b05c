"""Progress bar wrapper for long numerical scans."""

from __future__ import annotations

from typing import Any, Iterable, Iterator, TypeVar

from tqdm import tqdm

T = TypeVar("T")


def safe_tqdm(iterable: Iterable[T], **kwargs: Any) -> Iterator[T]:
    """Wrapper for ``tqdm`` that degrades gracefully if progress bars fail.

    The bar is created lazily; when the terminal rejects it the ASCII
    variant is tried and finally the bare iterable is used.
    """
    items = list(iterable)
    try:
        bar = tqdm(items, **kwargs)
    except OSError:
        try:
            bar = tqdm(items, ascii=True, **kwargs)
        except Exception:
            bar = items
    except Exception:
        bar = items
    yield from bar
