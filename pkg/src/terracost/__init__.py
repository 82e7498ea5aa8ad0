"""Desk-scale traversability cost-map learning and navigation stack.

Submodules:
  terrain  - procedural 2.5D worlds and the ground-truth hazard oracle
  sensor   - simulated sparse lidar and point-cloud rasterization
  vehicle  - kinematic bicycle on the heightmap, self-supervised labels
  costnet  - patch-MLP cost map predictor with hand-written gradients
  meta     - first-order meta-learning (Reptile / FOMAML) and online adaptation
  control  - MPPI planner and the closed navigation loop
  harness  - dataset collection, training, evaluation, benchmark sweeps
  cli      - command-line entry points
"""

__version__ = "0.1.0"
