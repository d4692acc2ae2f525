"""Image-method room simulation and localization accuracy campaigns."""
