"""Dollar cost model: storage, on-demand transcoding, and their ratio.

Storage is priced per GB-month, transcoding per VM-hour. Sizes are
megabytes, so storage divides by 1024; transcode durations are seconds,
so compute divides by 3600. All arithmetic is double precision; rounding
to the cent happens only at serialization time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .workload import VideoAsset

MB_PER_GB = 1024.0
SECONDS_PER_VM_HOUR = 3600.0


@dataclass(frozen=True)
class PriceSheet:
    """Cloud prices driving both cost formulas (defaults: AWS-style rates)."""

    storage_price_per_gb_month: float = 0.023
    vm_price_per_hour: float = 0.05

    def __post_init__(self):
        if not self.storage_price_per_gb_month > 0:
            raise ValueError(
                f"storage_price_per_gb_month must be > 0, got {self.storage_price_per_gb_month}"
            )
        if not self.vm_price_per_hour > 0:
            raise ValueError(f"vm_price_per_hour must be > 0, got {self.vm_price_per_hour}")


DEFAULT_PRICES = PriceSheet()


@dataclass(frozen=True)
class CostBreakdown:
    """Storage and transcoding dollars for one video or one aggregate."""

    storage_dollars: float
    transcode_dollars: float

    def __post_init__(self):
        if self.storage_dollars < 0 or self.transcode_dollars < 0:
            raise ValueError("cost components must be non-negative")

    @property
    def total_dollars(self) -> float:
        return self.storage_dollars + self.transcode_dollars


def storage_cost(asset: VideoAsset, prices: PriceSheet, months: float = 1.0) -> float:
    """Dollars to keep one video stored for `months` months."""
    if months < 0:
        raise ValueError(f"months must be >= 0, got {months}")
    return prices.storage_price_per_gb_month * asset.size_mb / MB_PER_GB * months


def transcode_cost(asset: VideoAsset, views: float, prices: PriceSheet) -> float:
    """Dollars to transcode one video on demand for `views` requests.

    Fractional views are allowed so expected costs can be evaluated from
    fractional forecasts.
    """
    if views < 0:
        raise ValueError(f"views must be >= 0, got {views}")
    return (
        prices.vm_price_per_hour
        * asset.transcode_seconds_per_view
        * views
        / SECONDS_PER_VM_HOUR
    )


def cost_ratio(storage_dollars: float, transcode_dollars: float) -> float:
    """Storage dollars over transcode dollars.

    Returns inf when transcoding is free but storage is not, and 0.0 when
    both are free (stored-for-free boundary, treated as Keep downstream).
    """
    if not storage_dollars >= 0:
        raise ValueError(f"storage_dollars must be >= 0, got {storage_dollars}")
    if not transcode_dollars >= 0:
        raise ValueError(f"transcode_dollars must be >= 0, got {transcode_dollars}")
    if transcode_dollars == 0:
        return math.inf if storage_dollars > 0 else 0.0
    return storage_dollars / transcode_dollars
