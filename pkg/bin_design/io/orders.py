import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from ..utils.box_dims import BoxDims, Order
from ..utils.errors import InvalidDimensions, OrderFileError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestResult:
    """Orders kept for solving and the ids excluded because some item fits no orientation of the bounds."""
    orders: Tuple[Order, ...]
    excluded: Tuple[str, ...]

    @property
    def n_orders(self):
        return len(self.orders)


def parse_order_line(line, line_number=None):
    """
    Parse one order record: {"id": "...", "items": [[l, w, h], ...]}.

    Args:
        line (str): JSON object text
        line_number (int): position in the file, for diagnostics

    Returns:
        Order: parsed order
    """
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise OrderFileError(f'invalid JSON ({e.msg})', line_number) from e
    if not isinstance(record, dict) or 'id' not in record or 'items' not in record:
        raise OrderFileError('expected an object with "id" and "items"', line_number)
    items = record['items']
    if not isinstance(items, list) or not items:
        raise OrderFileError(f'order "{record["id"]}" needs a nonempty item list', line_number)
    try:
        boxes = []
        for item in items:
            if not isinstance(item, list) or len(item) != 3:
                raise OrderFileError(f'item {item!r} is not an [l, w, h] triple', line_number)
            box = BoxDims(*item)
            if box.is_zero:
                raise InvalidDimensions(f'item {item!r} has zero dimensions')
            boxes.append(box)
        return Order(record['id'], tuple(boxes))
    except (TypeError, ValueError) as e:
        raise OrderFileError(str(e), line_number) from e


def ingest(path, bounds, strict=False, allow_empty=False):
    """
    Read a line-delimited order file.

    Blank lines are skipped. Orders with an item that fits no orientation of the bounds are excluded with a
    warning, or abort the run when strict.

    Args:
        path (str or Path): order file
        bounds (Bounds): largest permissible bin
        strict (bool): raise instead of excluding unfittable orders
        allow_empty (bool): accept a file without orders

    Returns:
        IngestResult: kept orders in file order and excluded ids
    """
    path = Path(path)
    orders, excluded, seen = [], [], set()
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise OrderFileError(f'{path}: {e.strerror}') from e
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        order = parse_order_line(line, line_number)
        if order.id in seen:
            raise OrderFileError(f'duplicate order id "{order.id}"', line_number)
        seen.add(order.id)
        if order.fits_bounds(bounds):
            orders.append(order)
        elif strict:
            raise OrderFileError(f'order "{order.id}" has an item that fits no orientation of '
                                 f'{bounds.box}', line_number)
        else:
            excluded.append(order.id)
    if not seen and not allow_empty:
        raise OrderFileError(f'{path}: order file is empty')
    if excluded:
        logger.warning('%d of %d orders excluded: an item fits no orientation of %s', len(excluded), len(seen),
                       bounds.box)
    logger.info('Read %d orders from %s', len(orders), path)
    return IngestResult(tuple(orders), tuple(excluded))


def format_order_line(order):
    return json.dumps({'id': order.id, 'items': [list(item.as_tuple()) for item in order.items]})


def write_orders(orders, path):
    """Write orders in the format ingest reads."""
    with Path(path).open('w') as f:
        for order in orders:
            f.write(format_order_line(order) + '\n')
