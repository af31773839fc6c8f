#!/usr/bin/env python3
"""Print secure hold windows over a range of object sizes.

Shows how the closure-angle window in which an object is securely held
slides linearly with its width, which is what makes size-ordered
sequential release of a stacked pair possible.

Usage:
    python scripts/hold_windows.py [--shape sphere] [--sizes 40:70:5]
        [--material sil950] [--fingers 4] [--mass 0.05]
"""

import argparse

from origrip import GripperConfig, ObjectShape, Pose, ShapeKind, hold_window, material_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shape", choices=("sphere", "cube"), default="sphere")
    parser.add_argument("--sizes", default="40:70:5", help="lo:hi:step in mm")
    parser.add_argument("--material", default="sil950")
    parser.add_argument("--fingers", type=int, choices=(2, 4), default=4)
    parser.add_argument("--mass", type=float, default=0.05, help="kg")
    parser.add_argument("--mu", type=float, default=0.5)
    args = parser.parse_args()

    lo, hi, step = (float(p) for p in args.sizes.split(":"))
    config = GripperConfig(finger_count=args.fingers)
    material = material_table()[args.material]

    print(f"{'size':>6}  {'window lo':>9}  {'window hi':>9}  limiting")
    size = lo
    while size <= hi + 1e-9:
        # center the widest section between the module levels
        mid = 0.5 * (config.module_levels[0] + config.module_levels[-1])
        obj = ObjectShape(
            ShapeKind(args.shape), (size,), mass=args.mass, pose=Pose(z=mid - size / 2.0)
        )
        window = hold_window(obj, config, material, mu=args.mu)
        if window is None:
            print(f"{size:6.1f}  {'--':>9}  {'--':>9}  none")
        else:
            print(
                f"{size:6.1f}  {window.theta_lo:9.2f}  {window.theta_hi:9.2f}  "
                f"{window.limiting_factor.value}"
            )
        size += step


if __name__ == "__main__":
    main()
