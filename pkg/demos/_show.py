"""Small plotting helper shared by the demos; matplotlib is optional."""

from pathlib import Path

import numpy as np

OUT = Path(__file__).parent / "figures"


def show(name, images, titles=None):
    """Save a row of images to demos/figures/<name>.png, or print a summary."""
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        for i, img in enumerate(images):
            t = titles[i] if titles else i
            print(f"[{name}] {t}: shape {img.shape}, {np.count_nonzero(img)} nonzero")
        return
    OUT.mkdir(exist_ok=True)
    fig, axes = plt.subplots(1, len(images), figsize=(4 * len(images), 4), squeeze=False)
    for ax, img, t in zip(axes[0], images, titles or [""] * len(images)):
        # fftshift puts the origin (DC) in the middle, which is how k-space is usually drawn
        ax.imshow(np.fft.fftshift(img), cmap="gray", interpolation="nearest")
        ax.set_title(t)
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(OUT / f"{name}.png", dpi=100)
    plt.close(fig)
    print("wrote", OUT / f"{name}.png")
