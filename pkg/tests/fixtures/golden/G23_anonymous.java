class G23 {
    public static void main(String[] args) {
        Runnable task = new Runnable() {
            public void run() {
                for (int i = 0; i < 3; i++) {
                    System.out.println(i);
                }
            }
        };
        task.run();
    }
}
